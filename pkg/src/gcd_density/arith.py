"""Modular and multiplicative number theory primitives.

Everything here works on plain Python ints. Moduli are documented as
below 2**62 and factorization inputs below 2**63, which keeps the
behaviour identical to a fixed-width implementation, but Python's
integers never overflow so the caps are not enforced.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import NonResidue, NotInvertible, ZeroInput

# Deterministic for every n < 3.3e24, which covers the whole 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
TRIAL_LIMIT = 10**6


def mul_mod(a: int, b: int, m: int) -> int:
    return (a * b) % m


def pow_mod(a: int, e: int, m: int) -> int:
    """Square-and-multiply exponentiation."""
    if e < 0:
        raise ValueError("negative exponent")
    result = 1 % m
    base = a % m
    while e:
        if e & 1:
            result = result * base % m
        base = base * base % m
        e >>= 1
    return result


def inv_mod(a: int, m: int) -> int:
    """Inverse of a modulo m via the extended Euclidean algorithm."""
    r0, r1 = a % m, m
    s0, s1 = 1, 0
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        raise NotInvertible(f"{a} is not invertible modulo {m} (gcd {r0})")
    return s0 % m


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, by Euler's criterion."""
    t = pow(a % p, (p - 1) // 2, p)
    if t == 0:
        return 0
    return 1 if t == 1 else -1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers a and n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # factor out powers of two from n with the (a/2) rule
    v = (n & -n).bit_length() - 1
    if v:
        if a % 2 == 0:
            return 0
        n >>= v
        if v & 1 and a % 8 in (3, 5):
            result = -result
    # n is now odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod(a: int, p: int) -> int:
    """Square root of a modulo an odd prime p (Tonelli-Shanks).

    Returns the smaller of the two roots so callers get reproducible
    output.
    """
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise NonResidue(f"{a} is not a square modulo {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n below 2**64."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]
    sign: int

    def __post_init__(self) -> None:
        prod = 1
        for q, e in self.factors:
            prod *= q**e
        if self.sign * prod != self.value:
            raise ValueError("factorization does not multiply back to value")

    @property
    def primes(self) -> list[int]:
        return [q for q, _ in self.factors]


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Return a nontrivial factor of the odd composite n."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n, rng)
    _split(d, out, rng)
    _split(n // d, out, rng)


def factorize(n: int) -> Factorization:
    """Complete factorization: trial division to 10**6, then Pollard rho."""
    if n == 0:
        raise ZeroInput("cannot factor 0")
    sign = -1 if n < 0 else 1
    m = abs(n)
    found: dict[int, int] = {}
    for q in small_primes():
        if q * q > m:
            break
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            found[q] = e
    if m > 1:
        # the seed only affects speed, never the result
        _split(m, found, random.Random(m))
    return Factorization(n, tuple(sorted(found.items())), sign)


def squarefree_kernel(n: int) -> int:
    """Product of the primes dividing n to an odd power, keeping n's sign."""
    f = factorize(n)
    k = f.sign
    for q, e in f.factors:
        if e % 2:
            k *= q
    return k


def fundamental_discriminant(delta: int) -> int:
    """Discriminant of the field Q(sqrt(delta)).

    Returns 1 when delta is a perfect square, i.e. the field is Q itself.
    """
    d = squarefree_kernel(delta)
    if d == 1:
        return 1
    return d if d % 4 == 1 else 4 * d


def is_perfect_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _simple_sieve(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for q in range(2, math.isqrt(limit) + 1):
        if flags[q]:
            flags[q * q :: q] = False
    return np.flatnonzero(flags)


@lru_cache(maxsize=1)
def small_primes() -> tuple[int, ...]:
    """All primes up to TRIAL_LIMIT, cached."""
    return tuple(_simple_sieve(TRIAL_LIMIT).tolist())


def iter_prime_segments(limit: int, segment: int = 1 << 20) -> Iterator[np.ndarray]:
    """Yield the primes <= limit in increasing order, one segment at a time."""
    if limit < 2:
        return
    base = _simple_sieve(math.isqrt(limit))
    low = 0
    while low <= limit:
        high = min(low + segment, limit + 1)
        flags = np.ones(high - low, dtype=bool)
        if low < 2:
            flags[: 2 - low] = False
        for q in base:
            q = int(q)
            if q * q >= high:
                break
            start = max(q * q, -(-low // q) * q)
            flags[start - low :: q] = False
        yield np.flatnonzero(flags).astype(np.int64) + low
        low = high


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit by a segmented sieve of Eratosthenes."""
    if limit < 2:
        return []
    return np.concatenate(list(iter_prime_segments(limit))).tolist()


def primes_dividing(n: int) -> list[int]:
    return factorize(n).primes
