import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from depdetect.errors import BadPrime, FactorizationOverflow, InvalidInstance
from depdetect.gm import (decode, discrete_log, encode, global_oracle_gm, local_check_gm,
                          power_product, primitive_root, scan_gm)
from depdetect.model import DEPENDENT, INDEPENDENT, MultInstance
from depdetect.primes import primes_up_to


def brute_cyclic_member(beta, gammas, p):
    """Is beta mod p in the subgroup of F_p^x generated by the gammas?"""
    res = [x.numerator * pow(x.denominator, -1, p) % p for x in (beta, *gammas)]
    seen, frontier = {1}, [1]
    while frontier:
        nxt = []
        for s in frontier:
            for g in res[1:]:
                t = s * g % p
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return res[0] in seen


def test_local_examples():
    res = local_check_gm(MultInstance([2], 4), 7)
    assert res.passed and pow(2, res.coefficients[0], 7) == 4
    assert not local_check_gm(MultInstance([4], 2), 5).passed
    assert brute_cyclic_member(Fraction(2), [Fraction(4)], 5) is False
    assert local_check_gm(MultInstance([2, 3], 1), 11).coefficients == (0, 0)
    with pytest.raises(BadPrime):
        local_check_gm(MultInstance([2], 4), 2)


def test_global_examples():
    assert global_oracle_gm(MultInstance([2, 3, 5], 720)) == [4, 2, 1]
    assert global_oracle_gm(MultInstance([2, 3], 6)) == [1, 1]
    assert global_oracle_gm(MultInstance([2], -2)) is None
    assert global_oracle_gm(MultInstance([-2], -8)) == [3]
    assert global_oracle_gm(MultInstance([Fraction(1, 2)], 8)) == [-3]
    assert global_oracle_gm(MultInstance([4], 2)) is None


def test_scan_examples():
    v = scan_gm(MultInstance([2, 3, 5], 720), 10_000)
    assert v.kind == DEPENDENT and v.coefficients == (4, 2, 1)
    v = scan_gm(MultInstance([2], 1), 100)
    assert v.kind == DEPENDENT and v.coefficients == (0,)


def test_independent_witness_is_smallest_brute_failure():
    inst = MultInstance([4], 2)
    v = scan_gm(inst, 100)
    assert v.kind == INDEPENDENT
    brute = [p for p in primes_up_to(100)
             if p != 2 and not brute_cyclic_member(inst.beta, list(inst.gammas), p)]
    # 4 = 1 mod 3, so 2 already fails to be a power of 4 at p = 3
    assert v.witness == brute[0] == 3


def test_invalid_instances():
    with pytest.raises(InvalidInstance):
        MultInstance([0], 2)
    with pytest.raises(FactorizationOverflow):
        global_oracle_gm(MultInstance([2], 10**13 + 1))


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 101, 257, 7919])
def test_primitive_root_and_dlog(p):
    g = primitive_root(p)
    assert len({pow(g, k, p) for k in range(p - 1)}) == p - 1
    for h in range(1, min(p, 200)):
        assert pow(g, discrete_log(h, g, p), p) == h


def test_primitive_root_is_smallest():
    for p in primes_up_to(400)[1:]:
        g = primitive_root(p)
        for c in range(2, g):
            assert len({pow(c, k, p) for k in range(p - 1)}) < p - 1


def test_exponent_vector_round_trip():
    rng = random.Random(2024)
    for _ in range(10_000):
        x = Fraction(rng.randint(-10**6, 10**6) or 1, rng.randint(1, 10**6))
        assert decode(encode(x)) == x


@settings(max_examples=200)
@given(st.fractions().filter(lambda x: x != 0 and abs(x.numerator) <= 10**9 and x.denominator <= 10**9))
def test_exponent_vector_round_trip_hypothesis(x):
    assert decode(encode(x)) == x


def _random_instance(rng):
    pool = [2, 3, 5, 7, -1, -2, Fraction(3, 2), Fraction(5, 9), 6, 10, 12, Fraction(-7, 4)]
    gammas = rng.sample(pool, rng.randint(1, 3))
    if rng.random() < 0.5:
        exps = [rng.randint(-6, 6) for _ in gammas]
        beta = power_product(gammas, exps)
        if beta == 1:
            beta = Fraction(gammas[0])
    else:
        beta = Fraction(rng.choice([11, 13, -3, Fraction(2, 7), 15, 18, -20]))
    return MultInstance(gammas, beta)


def test_scan_agrees_with_oracle_on_random_instances():
    rng = random.Random(99)
    for _ in range(60):
        inst = _random_instance(rng)
        oracle = global_oracle_gm(inst)
        v = scan_gm(inst, 2000)
        assert (v.kind == DEPENDENT) == (oracle is not None)
        if v.kind == DEPENDENT:
            assert power_product(inst.gammas, v.coefficients) == inst.beta
        elif v.witness is not None:
            assert not brute_cyclic_member(inst.beta, list(inst.gammas), v.witness)


def test_dependent_instances_never_fail_locally():
    rng = random.Random(5)
    for _ in range(20):
        gammas = [Fraction(rng.choice([2, 3, 5, 7, -3])) for _ in range(2)]
        beta = power_product(gammas, [rng.randint(-6, 6) for _ in gammas])
        inst = MultInstance(gammas, beta)
        for p in primes_up_to(300)[1:]:
            if beta.numerator % p and beta.denominator % p and all(
                    g.numerator % p and g.denominator % p for g in gammas):
                assert local_check_gm(inst, p).passed
