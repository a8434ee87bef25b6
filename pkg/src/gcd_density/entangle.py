"""Exact densities for finite prime sets, with the Serre-curve correction.

For a set S of primes, delta_S is the product of the local avoidance
densities. When the curve's discriminant field Q(sqrt(D)) has D = 1 mod 4
and every prime of 2D lies in S, the mod-S image is the index-2 subgroup
cut out by  prod_{l | D} chi_l(det M_l) = sgn(M_2)  and the density picks
up a correction factor. ``enumerate_density`` recomputes the same numbers
by counting matrix tuples directly.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .arith import is_prime, legendre, primes_dividing
from .errors import MismatchedCount, MissingComponent, TooLarge, WrongCase
from .gl2 import MAX_ELL, Mat2, enumerate_gl2, group_order, is_special, sgn2, special_fraction

CARTESIAN_BUDGET = 10**7

Rational = Fraction


@dataclass(frozen=True)
class EntangleSpec:
    S: tuple[int, ...]
    D: int

    def __post_init__(self) -> None:
        if not self.S:
            raise ValueError("S must be nonempty")
        for ell in self.S:
            if not is_prime(ell):
                raise ValueError(f"{ell} in S is not prime")
        if self.D % 4 not in (0, 1):
            raise ValueError(f"D={self.D} is not a discriminant (must be 0 or 1 mod 4)")
        object.__setattr__(self, "S", tuple(sorted(set(self.S))))

    @property
    def restricted(self) -> bool:
        """True when the entangled case applies: D = 1 mod 4 and primes(2D) in S."""
        if self.D % 4 != 1 or self.D == 1:
            return False
        return set(primes_dividing(2 * self.D)) <= set(self.S)


def delta_S(S) -> Fraction:
    """prod over l in S of (1 - l / ((l - 1)^2 (l + 1)))."""
    out = Fraction(1)
    for ell in set(S):
        out *= 1 - special_fraction(ell)
    return out


def correction_factor(D: int) -> Fraction:
    """1 + prod over primes l | D of -l / (l^3 - l^2 - 2l + 1)."""
    if D % 4 != 1 or D == 1:
        raise WrongCase(f"correction factor needs D = 1 mod 4 and D != 1, got {D}")
    prod = Fraction(1)
    for ell in primes_dividing(D):
        prod *= Fraction(-ell, ell**3 - ell**2 - 2 * ell + 1)
    return 1 + prod


def density_S(spec: EntangleSpec) -> Fraction:
    if spec.restricted:
        return delta_S(spec.S) * correction_factor(spec.D)
    return delta_S(spec.S)


def serre_member(tup: Mapping[int, Mat2], D: int) -> bool:
    """Whether prod_{l | D} legendre(det M_l, l) equals sgn(M_2)."""
    needed = [2] + primes_dividing(D)
    missing = [ell for ell in needed if ell not in tup]
    if missing:
        raise MissingComponent(f"tuple lacks components at {missing}")
    chi = 1
    for ell in primes_dividing(D):
        chi *= legendre(tup[ell].det, ell)
    return chi == sgn2(tup[2])


def _local_sign(M: Mat2, spec: EntangleSpec) -> int:
    """This component's contribution to sgn(M_2) * prod chi_l(det M_l)."""
    if not spec.restricted:
        return 1
    if M.ell == 2:
        return sgn2(M)
    if spec.D % M.ell == 0:
        return legendre(M.det, M.ell)
    return 1


def _local_table(ell: int, spec: EntangleSpec) -> list[tuple[bool, int]]:
    if ell > MAX_ELL:
        raise TooLarge(f"l={ell} exceeds the enumeration cap {MAX_ELL}")
    return [(not is_special(M), _local_sign(M, spec)) for M in enumerate_gl2(ell)]


def _count_block(tables: list[list[tuple[bool, int]]]) -> tuple[int, int]:
    members = good = 0
    for combo in itertools.product(*tables):
        sign = 1
        ok = True
        for nonspecial, s in combo:
            sign *= s
            ok = ok and nonspecial
        if sign == 1:
            members += 1
            good += ok
    return members, good


def _count_chunk(args) -> tuple[int, int]:
    head, rest = args
    return _count_block([head] + rest)


def cartesian_counts(spec: EntangleSpec, workers: int = 1) -> tuple[int, int]:
    """(|restricted product|, tuples in it with every component non-special).

    Full enumeration of prod GL_2(F_l). With workers > 1 the outermost
    factor is split across processes; the sums do not depend on the split.
    """
    size = math.prod(group_order(ell) for ell in spec.S)
    if size > CARTESIAN_BUDGET:
        raise TooLarge(f"{size} tuples exceeds the Cartesian budget {CARTESIAN_BUDGET}")
    tables = [_local_table(ell, spec) for ell in spec.S]
    if workers <= 1:
        return _count_block(tables)
    head, rest = tables[0], tables[1:]
    step = -(-len(head) // workers)
    chunks = [(head[i : i + step], rest) for i in range(0, len(head), step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_count_chunk, chunks))
    return sum(m for m, _ in parts), sum(g for _, g in parts)


def aggregate_counts(spec: EntangleSpec) -> tuple[int, int]:
    """Same numbers as cartesian_counts, by combining per-l sign tallies."""
    # ways[sign] over all tuples, and over all-non-special tuples
    all_ways = {1: 1, -1: 0}
    good_ways = {1: 1, -1: 0}
    for ell in spec.S:
        tally = Counter(_local_table(ell, spec))
        every = {s: tally[(True, s)] + tally[(False, s)] for s in (1, -1)}
        nonspecial = {s: tally[(True, s)] for s in (1, -1)}
        all_ways = _convolve(all_ways, every)
        good_ways = _convolve(good_ways, nonspecial)
    return all_ways[1], good_ways[1]


def _convolve(acc: dict[int, int], local: dict[int, int]) -> dict[int, int]:
    return {
        s: sum(acc[t] * local[u] for t in (1, -1) for u in (1, -1) if t * u == s)
        for s in (1, -1)
    }


def enumerate_density(spec: EntangleSpec, strategy: str = "both", workers: int = 1) -> Fraction:
    """Density of tuples with no special component, by counting.

    strategy is "cartesian", "aggregate", or "both" (cartesian when within
    budget, always cross-checked against aggregate).
    """
    if strategy not in ("cartesian", "aggregate", "both"):
        raise ValueError(f"unknown strategy {strategy!r}")
    results = []
    if strategy in ("aggregate", "both"):
        results.append(aggregate_counts(spec))
    if strategy == "cartesian" or (
        strategy == "both"
        and math.prod(group_order(ell) for ell in spec.S) <= CARTESIAN_BUDGET
    ):
        results.append(cartesian_counts(spec, workers))
    if len(set(results)) != 1:
        raise MismatchedCount(f"strategies disagree for {spec}: {results}")
    members, good = results[0]
    return Fraction(good, members)


def restricted_product_size(spec: EntangleSpec) -> int:
    return aggregate_counts(spec)[0]
