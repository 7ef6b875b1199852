"""The prime scan: local membership tests merged into a global verdict.

A failure at any good prime proves independence outright, because
reduction is a homomorphism. Passing every prime up to the bound proves
nothing by itself; dependence is only reported once the height oracle
(or a CRT reconstruction) produces coefficients that verify exactly.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from . import oracle
from .abgroup import decompose, membership, relation_period
from .errors import SingularGram
from .ff import crt_pair
from .model import DEPENDENT, INCONCLUSIVE, INDEPENDENT, Instance, LocalResult, Verdict
from .reduction import CurveFp, GroupStructureFp, good_primes, group_structure, reduce_curve, reduce_point

log = logging.getLogger(__name__)

DEFAULT_BOUND = 10_000

StructureSource = Callable[[CurveFp], GroupStructureFp]


@dataclass
class ScanConfig:
    threads: int = 1
    use_oracle: bool = True
    tol: float = oracle.DEFAULT_TOL
    box: int = oracle.DEFAULT_BOX
    structures: Optional[StructureSource] = None
    verbose: bool = False


def local_check(inst: Instance, p: int, structures: Optional[StructureSource] = None) -> LocalResult:
    """Membership of r_p(candidate) in the span of the r_p(P_i) inside E(F_p)."""
    E = inst.E
    Ep = reduce_curve(E, p)
    S = (structures or group_structure)(Ep)
    basis = [reduce_point(E, P, p) for P in inst.basis]
    target = reduce_point(E, inst.candidate, p)
    gens = [decompose(S, B) for B in basis]
    coeffs = membership(S, gens, decompose(S, target))
    if coeffs is None:
        return LocalResult(p, None, (S.n1, S.n2))
    if Ep.combine(coeffs, basis) != target:
        raise AssertionError(f"local solution at p = {p} does not verify")
    return LocalResult(p, tuple(coeffs), (S.n1, S.n2), relation_period(S, gens))


def reconstruct_crt(results: Sequence[LocalResult]) -> Optional[Tuple[List[int], int]]:
    """Combine unique local solutions by CRT.

    Returns ``(coefficients, modulus)`` with coefficients taken in the
    symmetric range, or None when some local solution is not unique
    modulo a single period or the congruences are inconsistent. The
    output is only a proposal and must be verified over Q.
    """
    if not results or not results[0].coefficients:
        return None
    r = len(results[0].coefficients)
    residues, modulus = [0] * r, 1
    for res in results:
        if not res.passed or res.period is None:
            return None
        new = []
        for c, x in zip(residues, res.coefficients):
            comb = crt_pair(c, modulus, x % res.period, res.period)
            if comb is None:
                return None
            new.append(comb)
        residues = [c for c, _ in new]
        modulus = new[0][1]
    sym = [c - modulus if 2 * c > modulus else c for c in residues]
    return sym, modulus


def _check_prime(args):
    inst, p, structures = args
    return local_check(inst, p, structures)


def _local_results(inst: Instance, primes: Sequence[int], config: ScanConfig):
    """Local results in ascending prime order, stopping after the first Fail.

    With several threads, primes are processed in ordered batches; the
    merge keeps only results up to the first failure, so the outcome does
    not depend on scheduling.
    """
    out: List[LocalResult] = []
    if config.threads <= 1:
        for p in primes:
            res = local_check(inst, p, config.structures)
            out.append(res)
            if not res.passed:
                break
        return out
    batch = 4 * config.threads
    with ThreadPoolExecutor(max_workers=config.threads) as pool:
        for start in range(0, len(primes), batch):
            chunk = primes[start:start + batch]
            for res in pool.map(_check_prime, [(inst, p, config.structures) for p in chunk]):
                out.append(res)
                if not res.passed:
                    return out
    return out


def _detail(res: LocalResult) -> dict:
    return {
        "p": res.p,
        "pass": res.passed,
        "coefficients": list(res.coefficients) if res.passed else None,
        "n1": res.moduli[0],
        "n2": res.moduli[1],
    }


def scan(inst: Instance, bound: int = DEFAULT_BOUND, config: Optional[ScanConfig] = None) -> Verdict:
    if bound < 3:
        raise ValueError("bound must be at least 3")
    config = config or ScanConfig()
    inst.validate()
    r = len(inst.basis)
    if inst.candidate is None:
        return Verdict(DEPENDENT, coefficients=(0,) * r, bound=bound, method="trivial")

    good, bad = good_primes(inst.E, bound)
    results = _local_results(inst, good, config)
    details = [_detail(res) for res in results] if config.verbose else []
    last = results[-1] if results else None
    if last is not None and not last.passed:
        w = last.p
        return Verdict(INDEPENDENT, witness=w, bound=bound, primes_tested=len(results),
                       primes_skipped=sum(1 for q in bad if q < w), details=details,
                       method="local")

    verdict = Verdict(INCONCLUSIVE, bound=bound, primes_tested=len(results),
                      primes_skipped=len(bad), details=details)
    if not config.use_oracle:
        return verdict
    coeffs = _close(inst, results, config, verdict)
    if coeffs is not None:
        verdict.kind = DEPENDENT
        verdict.coefficients = tuple(coeffs)
    return verdict


def _close(inst: Instance, results, config: ScanConfig, verdict: Verdict) -> Optional[List[int]]:
    """Turn an all-pass scan into exactly verified coefficients, if possible."""
    singular = False
    if inst.basis:
        try:
            oracle.check_gram(oracle.gram_matrix(inst.E, list(inst.basis), config.tol))
        except SingularGram as exc:
            singular = True
            verdict.warnings.append(f"basis may be dependent: {exc}")
    if not inst.basis:
        return None

    crt = reconstruct_crt(results)
    if crt is not None and oracle.verify(inst, crt[0]):
        verdict.method = "crt"
        return crt[0]

    if singular:
        found = oracle.box_search(inst, config.box)
        method = "box"
    else:
        found = oracle.recover_coefficients(inst, config.tol, config.box)
        method = "height"
    if found is not None:
        if not oracle.verify(inst, found):
            raise AssertionError("oracle returned unverified coefficients")
        verdict.method = method
    return found
