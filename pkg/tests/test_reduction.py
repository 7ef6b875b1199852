import math
import random

import pytest

from depdetect.curve import CurveQ, ec_add, ec_mul, point, small_points
from depdetect.errors import BadReduction
from depdetect.primes import primes_up_to
from depdetect.reduction import (CurveFp, count_points, good_primes, group_structure,
                                 is_good_prime, point_order, reduce_curve, reduce_point,
                                 validate_structure)

from helpers import TEST_CURVES, brute_order, brute_points, naive_add


def test_reduce_curve_examples(E11):
    assert reduce_curve(E11, 5) == CurveFp(1, 1, 5)
    with pytest.raises(BadReduction):
        reduce_curve(E11, 31)
    with pytest.raises(BadReduction):
        reduce_curve(E11, 2)
    with pytest.raises(ValueError):
        reduce_curve(E11, 9)


def test_reduce_point_examples(E11, P0):
    assert reduce_point(E11, None, 5) is None
    assert reduce_point(E11, P0, 5) == (0, 1)
    twoP = ec_mul(E11, 2, P0)
    assert reduce_point(E11, twoP, 5) == (4, 2)
    assert (2 * 2 - (4**3 + 4 + 1)) % 5 == 0


def test_denominator_prime_reduces_to_infinity():
    E, P = CurveQ(1, 1), point(0, 1)
    for n in range(2, 12):
        R = ec_mul(E, n, P)
        for q in good_primes(E, 200)[0]:
            if R[0].denominator % q == 0:
                assert reduce_point(E, R, q) is None
                assert n % brute_order(E.a % q, q, reduce_point(E, P, q)) == 0
                return
    pytest.fail("no multiple with an odd denominator prime found")


@pytest.mark.parametrize("a, b, p, expected", [(1, 1, 5, 9), (1, 1, 7, 5), (-1, 0, 5, 8)])
def test_count_examples(a, b, p, expected):
    assert count_points(reduce_curve(CurveQ(a, b), p)) == expected
    assert len(brute_points(a % p, b % p, p)) == expected


def test_point_order_examples(congruent):
    E5 = reduce_curve(CurveQ(1, 1), 5)
    assert point_order(E5, None, 9) == 1
    assert point_order(reduce_curve(congruent, 5), (0, 0), 8) == 2
    assert point_order(E5, (0, 1), 9) == 9
    assert naive_add(1, 5, naive_add(1, 5, (0, 1), (0, 1)), (0, 1)) == (2, 1)


@pytest.mark.parametrize("a, b", TEST_CURVES + [(-1, 0)])
def test_homomorphism(a, b):
    E = CurveQ(a, b)
    pts = [P for P in small_points(E, 5)][:6]
    rng = random.Random(a - b)
    for p in primes_up_to(200):
        if not is_good_prime(E, p):
            continue
        Ep = reduce_curve(E, p)
        for _ in range(4):
            P, Q = rng.choice(pts), rng.choice(pts)
            assert reduce_point(E, ec_add(E, P, Q), p) == Ep.add(reduce_point(E, P, p),
                                                                   reduce_point(E, Q, p))


def test_torsion_injectivity_small(congruent):
    torsion = [None, point(0, 0), point(1, 0), point(-1, 0)]
    for p in primes_up_to(200):
        if is_good_prime(congruent, p):
            assert len({reduce_point(congruent, T, p) for T in torsion}) == 4


@pytest.mark.parametrize("a, b", [(1, 1), (-1, 0), (-7, 10)])
def test_lagrange_and_orders_brute(a, b):
    E = CurveQ(a, b)
    for p in primes_up_to(60):
        if not is_good_prime(E, p):
            continue
        Ep = reduce_curve(E, p)
        N = count_points(Ep)
        for P in Ep.points():
            assert Ep.mul(N, P) is None
            assert point_order(Ep, P, N) == brute_order(Ep.a, p, P)


def test_structure_examples():
    S = group_structure(reduce_curve(CurveQ(1, 1), 5))
    assert (S.N, S.n1, S.n2, S.G1) == (9, 1, 9, None)
    assert brute_order(1, 5, S.G2) == 9
    S = group_structure(reduce_curve(CurveQ(-1, 0), 5))
    assert (S.N, S.n1, S.n2) == (8, 2, 4)
    assert brute_order(4, 5, S.G1) == 2 and brute_order(4, 5, S.G2) == 4


def test_prime_order_structure_is_cyclic():
    E = CurveQ(1, 1)
    seen = 0
    for p in good_primes(E, 500)[0]:
        S = group_structure(reduce_curve(E, p))
        if all(S.N % d for d in range(2, math.isqrt(S.N) + 1)):
            assert (S.n1, S.n2, S.G1) == (1, S.N, None)
            assert S.G2 is not None
            seen += 1
    assert seen > 0


@pytest.mark.parametrize("a, b", [(1, 1), (-1, 0), (0, 4), (-7, 10)])
def test_structure_invariants_and_brute_exponent(a, b):
    E = CurveQ(a, b)
    for p in good_primes(E, 150)[0]:
        S = group_structure(reduce_curve(E, p))
        validate_structure(S)
        pts = brute_points(S.curve.a, S.curve.b, p)
        exponent = math.lcm(*(brute_order(S.curve.a, p, P) for P in pts))
        assert exponent == S.n2
        assert S.n1 * S.n2 == len(pts)


def test_structure_is_deterministic():
    E = reduce_curve(CurveQ(-7, 10), 1009)
    from depdetect.reduction import _structure_cached

    first = group_structure(E)
    _structure_cached.cache_clear()
    assert group_structure(E) == first


def test_validate_rejects_bad_structure():
    S = group_structure(reduce_curve(CurveQ(-1, 0), 5))
    from dataclasses import replace

    with pytest.raises(ValueError):
        validate_structure(replace(S, G1=S.G2 and S.curve.mul(2, S.G2)))
    with pytest.raises(ValueError):
        validate_structure(replace(S, n1=1, n2=8, G1=None))
