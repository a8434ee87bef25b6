"""Exhaustive combinatorics of GL_2(F_l) for small primes l.

The brute-force counts here are deliberately naive (full enumeration,
explicit conjugation search) so they can serve as oracles for the closed
forms used elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .arith import is_prime, legendre
from .errors import MismatchedCount, TooLarge

MAX_ELL = 13


@dataclass(frozen=True, slots=True)
class Mat2:
    """[[a, b], [c, d]] over F_ell."""

    ell: int
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def of(cls, ell: int, a: int, b: int, c: int, d: int) -> "Mat2":
        return cls(ell, a % ell, b % ell, c % ell, d % ell)

    @classmethod
    def identity(cls, ell: int) -> "Mat2":
        return cls(ell, 1, 0, 0, 1)

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.ell

    @property
    def trace(self) -> int:
        return (self.a + self.d) % self.ell

    def __matmul__(self, other: "Mat2") -> "Mat2":
        n = self.ell
        return Mat2(
            n,
            (self.a * other.a + self.b * other.c) % n,
            (self.a * other.b + self.b * other.d) % n,
            (self.c * other.a + self.d * other.c) % n,
            (self.c * other.b + self.d * other.d) % n,
        )

    def inverse(self) -> "Mat2":
        n = self.ell
        k = pow(self.det, -1, n)
        return Mat2(n, self.d * k % n, -self.b * k % n, -self.c * k % n, self.a * k % n)

    def apply(self, v: tuple[int, int]) -> tuple[int, int]:
        x, y = v
        n = self.ell
        return ((self.a * x + self.b * y) % n, (self.c * x + self.d * y) % n)


def unipotent_T(ell: int) -> Mat2:
    return Mat2(ell, 1, 1, 0, 1)


def group_order(ell: int) -> int:
    return (ell * ell - 1) * (ell * ell - ell)


def special_fraction(ell: int) -> Fraction:
    """Closed-form share of special matrices: l^2 / |GL_2(F_l)|."""
    return Fraction(ell, (ell - 1) ** 2 * (ell + 1))


@lru_cache(maxsize=None)
def _enumerate(ell: int) -> tuple[Mat2, ...]:
    r = range(ell)
    return tuple(
        Mat2(ell, a, b, c, d)
        for a in r for b in r for c in r for d in r
        if (a * d - b * c) % ell
    )


def enumerate_gl2(ell: int) -> list[Mat2]:
    """Every invertible 2x2 matrix over F_ell, ell <= 13."""
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    if ell > MAX_ELL:
        raise TooLarge(f"enumeration capped at ell <= {MAX_ELL}")
    return list(_enumerate(ell))


_NONZERO_F2 = ((0, 1), (1, 0), (1, 1))


def sgn2(M: Mat2) -> int:
    """Sign of the permutation M induces on the nonzero vectors of F_2^2."""
    if M.ell != 2:
        raise ValueError("sgn2 is defined on GL_2(F_2) only")
    perm = [_NONZERO_F2.index(M.apply(v)) for v in _NONZERO_F2]
    inversions = sum(perm[i] > perm[j] for i in range(3) for j in range(i + 1, 3))
    return -1 if inversions % 2 else 1


def is_special(M: Mat2) -> bool:
    """det 1 and eigenvalue 1; together these force trace 2."""
    return M.det == 1 % M.ell and M.trace == 2 % M.ell


def is_conjugate_to_unitriangular(M: Mat2) -> bool:
    """Search GL_2 for G with G^-1 M G of the form [[1, *], [0, 1]]."""
    for G in _enumerate(M.ell):
        C = G.inverse() @ M @ G
        if C.a == 1 and C.c == 0 and C.d == 1:
            return True
    return False


class Count(NamedTuple):
    brute: int
    closed: int


def _checked(name: str, ell: int, brute: int, closed: int) -> Count:
    if brute != closed:
        raise MismatchedCount(f"{name}(ell={ell}): brute force {brute} != closed form {closed}")
    return Count(brute, closed)


def count_special(ell: int) -> Count:
    brute = sum(is_special(M) for M in enumerate_gl2(ell))
    return _checked("count_special", ell, brute, ell * ell)


def centralizer_order_T(ell: int) -> Count:
    T = unipotent_T(ell)
    brute = sum(G @ T == T @ G for G in enumerate_gl2(ell))
    return _checked("centralizer_order_T", ell, brute, ell * ell - ell)


def class_size_T(ell: int) -> Count:
    T = unipotent_T(ell)
    brute = len({G.inverse() @ T @ G for G in enumerate_gl2(ell)})
    return _checked("class_size_T", ell, brute, ell * ell - 1)


def chi_det_sum(ell: int) -> int:
    """Sum of legendre(det M, ell) over the non-special M in GL_2(F_ell)."""
    if ell == 2:
        raise ValueError("chi_det_sum needs an odd prime")
    return sum(legendre(M.det, ell) for M in enumerate_gl2(ell) if not is_special(M))


def sgn_sum_2() -> int:
    """Sum of sgn2 over the non-special elements of GL_2(F_2)."""
    return sum(sgn2(M) for M in enumerate_gl2(2) if not is_special(M))
