"""Command-line entry point: ``depdetect <check|orders|height|cache-warm> --input FILE``.

Exit codes: 0 dependent, 1 independent, 2 inconclusive, 64 usage error,
65 invalid or malformed instance.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Union

from . import oracle
from .cache import StructureCache
from .curve import CurveQ, PointQ
from .detector import DEFAULT_BOUND, ScanConfig, scan
from .errors import DepDetectError, InvalidInstance, ParseError, SingularCurve
from .explorer import OrderSpec, find_prescribed_orders
from .gm import scan_gm
from .model import Instance, MultInstance, Verdict
from .reduction import good_primes, reduce_curve

EXIT_USAGE = 64
EXIT_INVALID = 65


@dataclass(frozen=True)
class OrderJob:
    E: CurveQ
    points: tuple
    spec: OrderSpec


Job = Union[Instance, MultInstance, OrderJob]


class _UsageError(Exception):
    pass


# --- job parsing -------------------------------------------------------------

def _rational(value, where: str) -> Fraction:
    if not isinstance(value, str):
        raise ParseError("numbers must be given as strings", where)
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {value!r}", where) from None


def _integer(value, where: str) -> int:
    q = _rational(value, where)
    if q.denominator != 1:
        raise ParseError(f"not an integer: {value!r}", where)
    return q.numerator


def _point(value, where: str) -> PointQ:
    if value is None or value == "infinity":
        return None
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError('a point is ["x", "y"] or "infinity"', where)
    return (_rational(value[0], f"{where}[0]"), _rational(value[1], f"{where}[1]"))


def _points(doc: dict, key: str) -> List[PointQ]:
    value = doc.get(key, [])
    if not isinstance(value, list):
        raise ParseError("expected a list of points", key)
    return [_point(v, f"{key}[{i}]") for i, v in enumerate(value)]


def job_bound(doc: dict):
    return _integer(doc["bound"], "bound") if "bound" in doc else None


def load_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("job must be a JSON object", "line 1")
    return doc


def parse_job(text: str) -> Job:
    """Parse a JSON job description into an instance.

    Elliptic jobs carrying ``l`` and ``targets`` become an :class:`OrderJob`
    (points taken from ``points``, else ``basis``).
    """
    doc = load_document(text)
    system = doc.get("system")
    if system == "multiplicative":
        if not isinstance(doc.get("gammas", []), list):
            raise ParseError("expected a list", "gammas")
        gammas = [_rational(g, f"gammas[{i}]") for i, g in enumerate(doc.get("gammas", []))]
        if "beta" not in doc:
            raise ParseError("missing field", "beta")
        return MultInstance(tuple(gammas), _rational(doc["beta"], "beta"))
    if system != "elliptic":
        raise ParseError(f"unknown system {system!r}", "system")
    curve = doc.get("curve")
    if not isinstance(curve, dict) or "a" not in curve or "b" not in curve:
        raise ParseError('expected {"a": ..., "b": ...}', "curve")
    try:
        E = CurveQ(_integer(curve["a"], "curve.a"), _integer(curve["b"], "curve.b"))
    except SingularCurve as exc:
        raise InvalidInstance(str(exc)) from None
    if "l" in doc:
        points = _points(doc, "points" if "points" in doc else "basis")
        targets = doc.get("targets")
        if not isinstance(targets, list):
            raise ParseError("expected a list of exponents", "targets")
        spec = OrderSpec(_integer(doc["l"], "l"),
                         tuple(_integer(t, f"targets[{i}]") for i, t in enumerate(targets)),
                         job_bound(doc) or DEFAULT_BOUND)
        for i, P in enumerate(points):
            if not E.contains(P):
                raise InvalidInstance(f"points[{i}] not on curve")
        return OrderJob(E, tuple(points), spec)
    basis = _points(doc, "basis")
    if "candidate" not in doc:
        raise ParseError("missing field", "candidate")
    candidate = _point(doc["candidate"], "candidate")
    for i, P in enumerate(basis):
        if not E.contains(P):
            raise InvalidInstance(f"basis[{i}] not on curve")
    if not E.contains(candidate):
        raise InvalidInstance("candidate not on curve")
    return Instance(E, tuple(basis), candidate).validate()


# --- reports -----------------------------------------------------------------

def _fmt_point(P: PointQ):
    return "infinity" if P is None else [str(P[0]), str(P[1])]


def verdict_report(v: Verdict, system: str, verbose: bool) -> dict:
    rep = {
        "system": system,
        "verdict": v.kind,
        "coefficients": None if v.coefficients is None else [str(c) for c in v.coefficients],
        "witness_prime": v.witness,
        "bound": v.bound,
        "primes_tested": v.primes_tested,
        "primes_skipped": v.primes_skipped,
        "method": v.method,
        "warnings": list(v.warnings),
    }
    if verbose:
        rep["details"] = v.details
    return rep


def render(report: dict, timestamp: bool) -> str:
    if timestamp:
        report = dict(report)
        report["generated_at"] = _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


# --- commands ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="depdetect", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=["check", "orders", "height", "cache-warm"])
    ap.add_argument("--input", required=True, help="JSON job file ('-' for stdin)")
    ap.add_argument("--bound", type=int, help=f"largest prime to scan (default {DEFAULT_BOUND})")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--cache", help="group-structure cache file for the job's curve")
    ap.add_argument("--box", type=int, default=oracle.DEFAULT_BOX)
    ap.add_argument("--tol", type=float, default=oracle.DEFAULT_TOL)
    ap.add_argument("--no-oracle", action="store_true", help="never close an all-pass scan")
    ap.add_argument("--verbose", action="store_true", help="include per-prime detail")
    ap.add_argument("--no-timestamp", action="store_true")
    ap.add_argument("--output", help="write the report here instead of stdout")
    return ap


def _check(job: Job, args, bound: int):
    if isinstance(job, MultInstance):
        v = scan_gm(job, bound)
        return verdict_report(v, "multiplicative", args.verbose), v.exit_code
    if not isinstance(job, Instance):
        raise InvalidInstance("check needs a basis and a candidate")
    cache = StructureCache(job.E, args.cache) if args.cache else None
    config = ScanConfig(threads=args.threads, use_oracle=not args.no_oracle, tol=args.tol,
                        box=args.box, structures=cache, verbose=args.verbose)
    v = scan(job, bound, config)
    if cache is not None:
        cache.flush()
        v.warnings.extend(cache.warnings)
    return verdict_report(v, "elliptic", args.verbose), v.exit_code


def _orders(job: Job, args, bound: int):
    if not isinstance(job, OrderJob):
        raise InvalidInstance("orders needs l and targets in the job file")
    spec = OrderSpec(job.spec.l, job.spec.targets, bound)
    rep = find_prescribed_orders(job.E, list(job.points), spec)
    return {
        "l": spec.l,
        "targets": list(spec.targets),
        "bound": bound,
        "matching_primes": list(rep.matching_primes),
        "good_primes_tested": rep.good_primes_tested,
        "frequency": str(rep.frequency),
    }, 0


def _height(job: Job, args, bound: int):
    if isinstance(job, Instance):
        E, points = job.E, list(job.basis) + [job.candidate]
    elif isinstance(job, OrderJob):
        E, points = job.E, list(job.points)
    else:
        raise InvalidInstance("height needs an elliptic job")
    basis = list(job.basis) if isinstance(job, Instance) else points
    heights = [{"point": _fmt_point(P), "height": repr(oracle.canonical_height(E, P, args.tol).value)}
               for P in points]
    gram = oracle.gram_matrix(E, basis, args.tol)
    rep = {"heights": heights, "gram": [[repr(float(x)) for x in row] for row in gram],
           "tol": args.tol, "warnings": []}
    try:
        rep["condition"] = repr(oracle.check_gram(gram))
    except DepDetectError as exc:
        rep["warnings"].append(str(exc))
    return rep, 0


def _cache_warm(job: Job, args, bound: int):
    if isinstance(job, MultInstance):
        raise InvalidInstance("cache-warm needs an elliptic job")
    if not args.cache:
        raise _UsageError("cache-warm requires --cache")
    E = job.E
    cache = StructureCache(E, args.cache)
    good, bad = good_primes(E, bound)
    todo = [p for p in good if p not in cache]
    if args.threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(args.threads) as pool:
            list(pool.map(lambda p: cache(reduce_curve(E, p)), todo))
    else:
        for p in todo:
            cache(reduce_curve(E, p))
    written = cache.flush()
    return {"cache": args.cache, "bound": bound, "records_written": written,
            "records_total": len(cache), "primes_skipped": len(bad),
            "warnings": cache.warnings}, 0


COMMANDS = {"check": _check, "orders": _orders, "height": _height, "cache-warm": _cache_warm}


def run(argv: Sequence[str] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    if args.threads < 1 or args.box < 0 or args.tol <= 0:
        print("depdetect: error: --threads >= 1, --box >= 0 and --tol > 0 required", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"depdetect: error: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        job = parse_job(text)
        bound = args.bound or job_bound(json.loads(text)) or DEFAULT_BOUND
        if bound < 3:
            raise _UsageError("bound must be at least 3")
        report, code = COMMANDS[args.command](job, args, bound)
    except _UsageError as exc:
        print(f"depdetect: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, InvalidInstance) as exc:
        print(f"depdetect: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text_out = render(report, timestamp=not args.no_timestamp)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text_out)
    else:
        stdout.write(text_out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
