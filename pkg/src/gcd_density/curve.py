"""Integer Weierstrass models, reduction mod p, and the group law over F_p.

Points are ``None`` (the point at infinity) or an ``(x, y)`` tuple of
residues. Tuples keep the point-counting loops cheap.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .arith import legendre, sqrt_mod
from .errors import BadReduction, Exhausted, SingularCurve

Point = Optional[Tuple[int, int]]
INFINITY: Point = None


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over the integers."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    b2: int = field(init=False)
    b4: int = field(init=False)
    b6: int = field(init=False)
    b8: int = field(init=False)
    delta: int = field(init=False)

    def __post_init__(self) -> None:
        a1, a2, a3, a4, a6 = self.ainvs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        if 4 * b8 != b2 * b6 - b4 * b4:
            raise AssertionError("b-invariant identity failed")
        delta = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        if delta == 0:
            raise SingularCurve(f"curve {self.label} is singular")
        for name, value in (("b2", b2), ("b4", b4), ("b6", b6), ("b8", b8), ("delta", delta)):
            object.__setattr__(self, name, value)

    @property
    def ainvs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def c4(self) -> int:
        return self.b2 * self.b2 - 24 * self.b4

    @property
    def c6(self) -> int:
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def label(self) -> str:
        return ",".join(str(a) for a in self.ainvs)


def new_curve(a1: int, a2: int, a3: int, a4: int, a6: int) -> WeierstrassCurve:
    return WeierstrassCurve(a1, a2, a3, a4, a6)


def parse_curve(text: str) -> WeierstrassCurve:
    """Parse the "a1,a2,a3,a4,a6" input format."""
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 5:
        raise ValueError(f"expected 5 comma-separated integers, got {text!r}")
    try:
        coeffs = [int(s) for s in parts]
    except ValueError:
        raise ValueError(f"non-integer coefficient in {text!r}") from None
    return WeierstrassCurve(*coeffs)


@dataclass(frozen=True)
class ReducedCurve:
    """A curve over F_p with good reduction.

    For p > 3 the model is the short form y^2 = x^3 + A x + B, stored as
    ainvs (0, 0, 0, A, B). For p in {2, 3} the reduced general model is
    kept.
    """

    p: int
    ainvs: tuple[int, int, int, int, int]

    @property
    def A(self) -> int:
        return self.ainvs[3]

    @property
    def B(self) -> int:
        return self.ainvs[4]

    @property
    def is_short(self) -> bool:
        return self.ainvs[:3] == (0, 0, 0)

    def rhs(self, x: int) -> int:
        """x^3 + A x + B mod p (short form only)."""
        p = self.p
        return (x * x % p * x + self.A * x + self.B) % p

    def twist(self, nonresidue: Optional[int] = None) -> "ReducedCurve":
        """Quadratic twist y^2 = x^3 + d^2 A x + d^3 B by a non-residue d."""
        p = self.p
        d = nonresidue
        if d is None:
            d = 2
            while legendre(d, p) != -1:
                d += 1
        return ReducedCurve(p, (0, 0, 0, d * d * self.A % p, d * d * d * self.B % p))


def reduce_mod_p(curve: WeierstrassCurve, p: int) -> ReducedCurve:
    """Reduce a curve modulo the prime p, raising BadReduction when p | delta."""
    if curve.delta % p == 0:
        raise BadReduction(f"p={p} divides the discriminant {curve.delta}")
    if p <= 3:
        return ReducedCurve(p, tuple(a % p for a in curve.ainvs))
    # y^2 = x^3 - 27 c4 x - 54 c6 is isomorphic over F_p when p > 3
    return ReducedCurve(p, (0, 0, 0, -27 * curve.c4 % p, -54 * curve.c6 % p))


def is_on_curve(P: Point, E: ReducedCurve) -> bool:
    if P is None:
        return True
    x, y = P
    a1, a2, a3, a4, a6 = E.ainvs
    p = E.p
    return (y * y + a1 * x * y + a3 * y - (x**3 + a2 * x * x + a4 * x + a6)) % p == 0


def negate(P: Point, E: ReducedCurve) -> Point:
    if P is None:
        return None
    x, y = P
    a1, _, a3, _, _ = E.ainvs
    return (x, (-y - a1 * x - a3) % E.p)


def add(P: Point, Q: Point, E: ReducedCurve) -> Point:
    """Chord-tangent addition on a general Weierstrass model."""
    if P is None:
        return Q
    if Q is None:
        return P
    p = E.p
    a1, a2, a3, a4, a6 = E.ainvs
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2 + a1 * x2 + a3) % p == 0:
            return None
        den = (2 * y1 + a1 * x1 + a3) % p
        inv = pow(den, -1, p)
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) * inv % p
        nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) * inv % p
    else:
        inv = pow(x2 - x1, -1, p)
        lam = (y2 - y1) * inv % p
        nu = (y1 * x2 - y2 * x1) * inv % p
    x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % p
    y3 = (-(lam + a1) * x3 - nu - a3) % p
    return (x3, y3)


def scalar_mul(k: int, P: Point, E: ReducedCurve) -> Point:
    """k*P by double-and-add; negative k multiplies the negated point."""
    if k < 0:
        return scalar_mul(-k, negate(P, E), E)
    result: Point = None
    addend = P
    while k:
        if k & 1:
            result = add(result, addend, E)
        addend = add(addend, addend, E)
        k >>= 1
    return result


def affine_points(E: ReducedCurve) -> list[tuple[int, int]]:
    """Every affine point, by exhaustive search. Only sensible for small p."""
    p = E.p
    return [(x, y) for x in range(p) for y in range(p) if is_on_curve((x, y), E)]


def random_point(E: ReducedCurve, seed) -> tuple[int, int]:
    """Deterministic pseudo-random affine point on a short-form curve.

    ``seed`` may be any value accepted by ``random.Random`` or an existing
    ``random.Random`` instance, which is then advanced.
    """
    p = E.p
    if p <= 3:
        raise ValueError("random_point needs p > 3")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    for _ in range(10 * p):
        x = rng.randrange(p)
        r = E.rhs(x)
        if r == 0:
            return (x, 0)
        if pow(r, (p - 1) // 2, p) == 1:
            return (x, sqrt_mod(r, p))
    raise Exhausted(f"no point found after {10 * p} trials at p={p}")
