"""Decide membership of a rational point in a subgroup of E(Q) from its
reductions modulo primes, with exact certificates either way."""

from ._kernels import BACKEND
from .curve import CurveQ, INFINITY, ec_add, ec_mul, ec_neg, is_torsion, linear_combination, point
from .detector import ScanConfig, local_check, reconstruct_crt, scan
from .errors import *  # noqa: F401,F403
from .explorer import DensityReport, OrderSpec, find_prescribed_orders, l_part_order
from .gm import global_oracle_gm, local_check_gm, scan_gm
from .model import Instance, LocalResult, MultInstance, Verdict
from .oracle import canonical_height, height_pairing, recover_coefficients

__version__ = "0.1.0"
