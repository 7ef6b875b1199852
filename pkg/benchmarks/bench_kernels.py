"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import importlib
import sys
import timeit

from depdetect._kernels import _purepy
from depdetect.ff import sqrt_int


def some_point(a, b, p):
    x = 0
    while sqrt_int(x**3 + a * x + b, p) is None:
        x += 1
    return (x, sqrt_int(x**3 + a * x + b, p))


def cases():
    a, b = 1, 1
    for p in (1009, 10007, 100003):
        yield f"count_points p={p}", lambda m, p=p: m.count_points(a, b, p)
    P = some_point(a, b, 1000003)
    yield "point_mul p=1000003 n~2^40", lambda m: m.point_mul(a, 1000003, 2**40 + 12345, P)
    yield "multiples p=1000003 k=2000", lambda m: m.multiples(a, 1000003, P, 2000)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    try:
        compiled = importlib.import_module("depdetect._kernels._ckernels")
    except ImportError:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return 1
    print(f"{'kernel':32s} {'python (ms)':>12s} {'compiled (ms)':>14s} {'speedup':>8s}")
    for name, fn in cases():
        assert fn(_purepy) == fn(compiled), name
        t_py = min(timeit.repeat(lambda: fn(_purepy), number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat))
        print(f"{name:32s} {1e3 * t_py:12.3f} {1e3 * t_c:14.3f} {t_py / t_c:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
