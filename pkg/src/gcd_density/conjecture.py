"""The universal constant C and the conjectured density for a given curve."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .arith import fundamental_discriminant, sieve_primes
from .curve import WeierstrassCurve
from .entangle import correction_factor
from .gl2 import special_fraction


def local_factor(ell: int) -> Fraction:
    """Density of primes p for which l is not a common factor of p - 1 and #E(F_p)."""
    return 1 - special_fraction(ell)


@dataclass(frozen=True)
class ConstantEstimate:
    value: float
    truncation_prime: int
    limit: int
    error_bound: float

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "error_bound": self.error_bound,
            "truncation_prime": self.truncation_prime,
            "limit": self.limit,
        }


def universal_constant(limit: int) -> ConstantEstimate:
    """Truncated Euler product over primes l <= limit.

    The tail satisfies sum_{l > L} l/((l-1)^2 (l+1)) < sum_{n > L} 2/n^2 < 2/L;
    the reported bound is twice that.
    """
    if limit < 100:
        raise ValueError("limit must be at least 100")
    primes = sieve_primes(limit)
    # fsum is correctly rounded, so the result does not depend on order
    log_c = math.fsum(math.log1p(-float(special_fraction(ell))) for ell in primes)
    return ConstantEstimate(math.exp(log_c), primes[-1], limit, 4 / limit)


@dataclass(frozen=True)
class CurveConjecture:
    value: float
    error_bound: float
    truncation_prime: int
    discriminant: int
    fundamental_discriminant: int
    correction: Fraction
    constant: float
    non_serre: bool = False

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "error_bound": self.error_bound,
            "truncation_prime": self.truncation_prime,
            "discriminant": self.discriminant,
            "fundamental_discriminant": self.fundamental_discriminant,
            "correction_num": self.correction.numerator,
            "correction_den": self.correction.denominator,
            "serre_assumed": True,
            "non_serre": self.non_serre,
        }


def curve_conjecture(curve: WeierstrassCurve, limit: int,
                     constant: ConstantEstimate | None = None) -> CurveConjecture:
    """Conjectured density of p with gcd(#E(F_p), p - 1) = 1, assuming E is a Serre curve.

    A square discriminant rules out a Serre curve; the result is then
    flagged non_serre (with a warning) and carries no correction.
    """
    if constant is None:
        constant = universal_constant(limit)
    D = fundamental_discriminant(curve.delta)
    non_serre = D == 1
    if non_serre:
        warnings.warn(
            f"discriminant {curve.delta} is a square: {curve.label} is not a Serre curve",
            stacklevel=2,
        )
        corr = Fraction(1)
    elif D % 4 == 0:
        corr = Fraction(1)
    else:
        corr = correction_factor(D)
    return CurveConjecture(
        value=constant.value * float(corr),
        error_bound=constant.error_bound * float(corr),
        truncation_prime=constant.truncation_prime,
        discriminant=curve.delta,
        fundamental_discriminant=D,
        correction=corr,
        constant=constant.value,
        non_serre=non_serre,
    )
