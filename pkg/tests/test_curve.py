import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gcd_density.arith import sieve_primes
from gcd_density.curve import (
    WeierstrassCurve,
    add,
    affine_points,
    is_on_curve,
    negate,
    new_curve,
    parse_curve,
    random_point,
    reduce_mod_p,
    scalar_mul,
)
from gcd_density.errors import BadReduction, SingularCurve

# the 8 affine points of y^2 = x^3 + x + 1 over F_5, by brute force
F5_POINTS = {(0, 1), (0, 4), (2, 1), (2, 4), (3, 1), (3, 4), (4, 2), (4, 3)}


def test_new_curve_discriminants():
    assert new_curve(0, 0, 0, 1, 1).delta == -16 * (4 + 27)
    assert new_curve(0, 0, 1, -1, 0).delta == 37
    with pytest.raises(SingularCurve):
        new_curve(0, 0, 0, 0, 0)


def test_parse_curve():
    assert parse_curve("0,0,1,-1,0").ainvs == (0, 0, 1, -1, 0)
    assert parse_curve(" 0, 0, 0, 1, 1 ").delta == -496
    for bad in ("0,0,1", "a,b,c,d,e", ""):
        with pytest.raises(ValueError):
            parse_curve(bad)


@given(st.tuples(*[st.integers(-10**4, 10**4)] * 5))
def test_b_invariant_identity(coeffs):
    a1, a2, a3, a4, a6 = coeffs
    b2, b4, b6 = a1 * a1 + 4 * a2, 2 * a4 + a1 * a3, a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    assert 4 * b8 == b2 * b6 - b4 * b4
    try:
        E = WeierstrassCurve(*coeffs)
    except SingularCurve:
        return
    assert (E.b2, E.b4, E.b6, E.b8) == (b2, b4, b6, b8)
    assert 1728 * E.delta == E.c4**3 - E.c6**2


def test_reduce_mod_p():
    E = reduce_mod_p(new_curve(0, 0, 1, -1, 0), 5)
    assert E.is_short
    assert (4 * E.A**3 + 27 * E.B**2) % 5 != 0
    with pytest.raises(BadReduction):
        reduce_mod_p(new_curve(0, 0, 0, 1, 1), 31)
    with pytest.raises(BadReduction):
        reduce_mod_p(new_curve(0, 0, 0, 1, 1), 2)
    small = reduce_mod_p(new_curve(0, 0, 1, -1, 0), 2)
    assert small.ainvs == (0, 0, 1, 1, 0)


def _count_general(ainvs, p):
    a1, a2, a3, a4, a6 = ainvs
    return 1 + sum(
        1 for x in range(p) for y in range(p)
        if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p == 0
    )


@pytest.mark.parametrize("ainvs", [(0, 0, 1, -1, 0), (1, -1, 1, -2, 3), (1, 0, 0, -1, 7), (0, 1, 1, 0, 0)])
def test_short_form_preserves_point_count(ainvs):
    E = WeierstrassCurve(*ainvs)
    for p in sieve_primes(100):
        if p <= 3 or E.delta % p == 0:
            continue
        R = reduce_mod_p(E, p)
        assert len(affine_points(R)) + 1 == _count_general(ainvs, p)


def test_group_law_examples():
    E = reduce_mod_p(new_curve(0, 0, 0, 1, 1), 5)
    assert set(affine_points(E)) == F5_POINTS
    for P in F5_POINTS:
        assert add(P, None, E) == P
        assert add(P, negate(P, E), E) is None
        assert scalar_mul(9, P, E) is None


def test_inverse_law_general_model():
    E = reduce_mod_p(new_curve(1, -2, -2, -2, -1), 2)
    for x, y in affine_points(E):
        a1, _, a3, _, _ = E.ainvs
        assert add((x, y), (x, (-y - a1 * x - a3) % 2), E) is None


def _sample_points(E, rng, k):
    pts = affine_points(E) if E.p < 50 else [random_point(E, rng) for _ in range(k)]
    return [rng.choice(pts) for _ in range(k)] + [None]


def test_group_axioms_on_random_primes():
    rng = random.Random(1)
    primes = [p for p in sieve_primes(10**4) if p > 3]
    curves = [new_curve(0, 0, 1, -1, 0), new_curve(0, 0, 0, 1, 1), new_curve(1, -1, 1, -2, 3)]
    for p in rng.sample(primes, 50):
        for C in curves:
            if C.delta % p == 0:
                continue
            E = reduce_mod_p(C, p)
            pts = _sample_points(E, rng, 5)
            for P in pts:
                assert is_on_curve(P, E)
                for Q in pts:
                    assert add(P, Q, E) == add(Q, P, E)
                    assert is_on_curve(add(P, Q, E), E)
                    for R in pts[:3]:
                        assert add(add(P, Q, E), R, E) == add(P, add(Q, R, E), E)


def test_group_axioms_in_characteristic_two_and_three():
    for ainvs, p in [((1, -2, -2, -2, -1), 2), ((1, -2, -2, -2, 1), 3), ((0, 0, 1, -1, 0), 2), ((0, 0, 1, -1, 0), 3)]:
        E = reduce_mod_p(WeierstrassCurve(*ainvs), p)
        pts = affine_points(E) + [None]
        n = len(pts)
        for P in pts:
            assert scalar_mul(n, P, E) is None
            for Q in pts:
                assert add(P, Q, E) == add(Q, P, E)
                for R in pts:
                    assert add(add(P, Q, E), R, E) == add(P, add(Q, R, E), E)


def test_scalar_mul_matches_repeated_addition():
    E = reduce_mod_p(new_curve(0, 0, 1, -1, 0), 101)
    P = random_point(E, 3)
    acc = None
    for k in range(40):
        assert scalar_mul(k, P, E) == acc
        acc = add(acc, P, E)
    assert scalar_mul(-3, P, E) == negate(scalar_mul(3, P, E), E)


def test_random_point():
    E = reduce_mod_p(new_curve(0, 0, 0, 1, 1), 5)
    for seed in range(20):
        P = random_point(E, seed)
        assert P in F5_POINTS
        assert P == random_point(E, seed)
    E = reduce_mod_p(new_curve(0, 0, 1, -1, 0), 10007)
    assert is_on_curve(random_point(E, "x"), E)


def test_twist_point_counts_sum():
    E = reduce_mod_p(new_curve(0, 0, 1, -1, 0), 97)
    T = E.twist()
    assert len(affine_points(E)) + len(affine_points(T)) + 2 == 2 * 97 + 2
