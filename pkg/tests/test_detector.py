import random

import pytest

from depdetect.curve import CurveQ, ec_mul, linear_combination, point
from depdetect.detector import ScanConfig, local_check, reconstruct_crt, scan
from depdetect.errors import InvalidInstance
from depdetect.model import DEPENDENT, INCONCLUSIVE, INDEPENDENT, Instance, LocalResult
from depdetect.reduction import good_primes, reduce_curve, reduce_point

from helpers import brute_span, independent_basis


def test_local_check_examples(E11, P0):
    for p in (5, 7, 11, 13):
        res = local_check(Instance(E11, [P0], P0), p)
        assert res.passed and res.coefficients[0] % res.moduli[1] == 1 % res.moduli[1]
    res = local_check(Instance(E11, [P0], ec_mul(E11, 2, P0)), 5)
    assert res.passed and res.coefficients == (2,) and res.moduli == (1, 9)
    assert not local_check(Instance(E11, [], P0), 5).passed


def test_local_check_agrees_with_brute_span(E11, P0):
    inst = Instance(E11, [ec_mul(E11, 2, P0)], P0)
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        Ep = reduce_curve(E11, p)
        span = brute_span(Ep.a, p, [reduce_point(E11, inst.basis[0], p)])
        assert local_check(inst, p).passed == (reduce_point(E11, P0, p) in span)


def test_reconstruct_crt_examples():
    assert reconstruct_crt([LocalResult(5, (3,), (1, 9), 9)]) == ([3], 9)
    assert reconstruct_crt([LocalResult(5, (2,), (1, 9), 9), LocalResult(7, (2,), (1, 5), 5)]) == ([2], 45)
    assert reconstruct_crt([LocalResult(5, (1,), (1, 4), 4), LocalResult(7, (3,), (1, 4), 4)]) is None
    assert reconstruct_crt([LocalResult(5, (1,), (1, 4), None)]) is None
    assert reconstruct_crt([]) is None


def test_scan_examples(E11, P0):
    v = scan(Instance(E11, [P0], ec_mul(E11, 3, P0)), 2000)
    assert v.kind == DEPENDENT and v.coefficients == (3,) and v.exit_code == 0

    inst = Instance(E11, [ec_mul(E11, 2, P0)], P0)
    v = scan(inst, 200)
    assert v.kind == INDEPENDENT and v.witness <= 200 and v.exit_code == 1
    Ep = reduce_curve(E11, v.witness)
    span = brute_span(Ep.a, v.witness, [reduce_point(E11, inst.basis[0], v.witness)])
    assert reduce_point(E11, P0, v.witness) not in span

    v = scan(Instance(E11, [P0, ec_mul(E11, 2, P0)], None), 50)
    assert v.kind == DEPENDENT and v.coefficients == (0, 0)


def test_invalid_instances(E11, P0, congruent):
    with pytest.raises(InvalidInstance):
        scan(Instance(congruent, [point(0, 0)], None), 50)
    with pytest.raises(InvalidInstance):
        scan(Instance(E11, [P0], point(1, 1)), 50)
    with pytest.raises(ValueError):
        scan(Instance(E11, [P0], P0), 2)


def test_no_oracle_is_inconclusive(E11, P0):
    v = scan(Instance(E11, [P0], ec_mul(E11, 3, P0)), 300, ScanConfig(use_oracle=False))
    assert v.kind == INCONCLUSIVE and v.bound == 300 and v.exit_code == 2


@pytest.mark.parametrize("a, b", [(1, 1), (-7, 10)])
def test_never_independent_on_dependent_instances(a, b):
    E = CurveQ(a, b)
    basis = independent_basis(E)
    rng = random.Random(a * b)
    for trial in range(12):
        coeffs = [rng.randint(-10, 10) for _ in basis]
        cand = linear_combination(E, coeffs, basis)
        v = scan(Instance(E, basis, cand), 400 if trial % 2 else 2000, ScanConfig(use_oracle=False))
        assert v.kind != INDEPENDENT


def test_independent_witness_rechecks_fail():
    E = CurveQ(-7, 10)
    A, B = independent_basis(E)[:2]
    for inst in (Instance(E, [A], B), Instance(E, [ec_mul(E, 3, A)], A),
                 Instance(E, [A, ec_mul(E, 2, B)], B)):
        v = scan(inst, 500)
        assert v.kind == INDEPENDENT
        assert not local_check(inst, v.witness).passed
        for p in good_primes(E, v.witness - 1)[0]:
            assert local_check(inst, p).passed


def test_dependent_coefficients_verify_exactly():
    E = CurveQ(-7, 10)
    basis = independent_basis(E)
    cand = linear_combination(E, [4, -7], basis[:2])
    v = scan(Instance(E, basis[:2], cand), 1000)
    assert v.kind == DEPENDENT and v.coefficients == (4, -7)
    assert linear_combination(E, list(v.coefficients), basis[:2]) == cand


def test_singular_basis_warns_and_still_verifies():
    E = CurveQ(-7, 10)
    A, B = point(1, 2), point(-1, 4)
    cand = linear_combination(E, [1, 1], [A, B])
    v = scan(Instance(E, [A, B], cand), 300)
    assert v.kind == DEPENDENT
    assert linear_combination(E, list(v.coefficients), [A, B]) == cand
    if v.method != "crt":
        assert any("dependent" in w for w in v.warnings)


def test_monotonicity(E11, P0):
    inst = Instance(E11, [ec_mul(E11, 6, P0)], ec_mul(E11, 2, P0))
    w = scan(inst, 50).witness
    assert w is not None
    for B in (100, 500, 2000):
        v = scan(inst, B)
        assert v.kind == INDEPENDENT and v.witness <= w


@pytest.mark.parametrize("threads", [2, 4, 8])
def test_determinism_across_threads(threads):
    E = CurveQ(-7, 10)
    A, B = independent_basis(E)[:2]
    for inst, bound in ((Instance(E, [A], B), 800),
                        (Instance(E, [A, B], linear_combination(E, [3, 2], [A, B])), 800)):
        one = scan(inst, bound, ScanConfig(threads=1, verbose=True))
        many = scan(inst, bound, ScanConfig(threads=threads, verbose=True))
        assert one == many


def test_statistics(E11, P0):
    v = scan(Instance(E11, [P0], ec_mul(E11, 2, P0)), 100)
    # bad primes up to 100 for y^2 = x^3 + x + 1: 2 and 31
    assert v.primes_skipped == 2
    assert v.primes_tested == 23
