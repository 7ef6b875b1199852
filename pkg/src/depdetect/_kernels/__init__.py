"""Hot prime-field kernels with a compiled core and a pure-Python fallback.

The compiled extension is used when it was built and importable; setting
``DEPDETECT_PURE_PYTHON=1`` forces the fallback. ``BACKEND`` records
which one is active.
"""

import os

from . import _purepy

_COMPILED_LIMIT = 2**31

try:
    if os.environ.get("DEPDETECT_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python backend requested")
    from . import _ckernels as _impl
    BACKEND = "compiled"
except ImportError:
    _impl = _purepy
    BACKEND = "python"

_INT64_MAX = 2**63 - 1


def count_points(a, b, p):
    """Number of points of y^2 = x^3 + ax + b over F_p, infinity included."""
    if p >= _COMPILED_LIMIT:
        return _purepy.count_points(a % p, b % p, p)
    return _impl.count_points(a % p, b % p, p)


def point_add(a, p, P, Q):
    if p >= _COMPILED_LIMIT:
        return _purepy.point_add(a % p, p, P, Q)
    return _impl.point_add(a % p, p, P, Q)


def point_mul(a, p, n, P):
    """``n * P`` for ``n >= 0``; arbitrary-size ``n`` falls back to Python."""
    if p >= _COMPILED_LIMIT or n > _INT64_MAX:
        return _purepy.point_mul(a % p, p, n, P)
    return _impl.point_mul(a % p, p, n, P)


def multiples(a, p, P, k):
    """The list ``[0*P, 1*P, ..., (k-1)*P]``."""
    if p >= _COMPILED_LIMIT:
        return _purepy.multiples(a % p, p, P, k)
    return _impl.multiples(a % p, p, P, k)
