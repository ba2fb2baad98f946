"""Bessel and Hankel functions of integer order for the Helmholtz kernels.

Thin contracts over scipy.special: non-negative integer orders, real
arguments, finite results.  Orders 0 and 1 feed the fundamental solution;
higher orders feed the disk modal series.
"""

from __future__ import annotations

import numpy as np
from scipy import special as _sp

from .errors import NegativeOrder, NonpositiveArgument

EULER_GAMMA = float(np.euler_gamma)


def _check_order(n: int) -> int:
    if int(n) != n or n < 0:
        raise NegativeOrder(f"order must be a non-negative integer, got {n!r}")
    return int(n)


def bessel_j(n: int, x):
    """J_n(x) for integer n >= 0; x = 0 is allowed (J_0(0)=1, J_n(0)=0)."""
    n = _check_order(n)
    x = np.asarray(x, dtype=float)
    out = _sp.jv(n, x)
    if not np.all(np.isfinite(out)):
        raise ValueError(f"bessel_j({n}) produced non-finite values")
    return float(out) if out.ndim == 0 else out


def bessel_y(n: int, x):
    """Y_n(x) for integer n >= 0 and x > 0."""
    n = _check_order(n)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise NonpositiveArgument("bessel_y requires x > 0")
    out = _sp.yv(n, x)
    if not np.all(np.isfinite(out)):
        raise ValueError(f"bessel_y({n}) produced non-finite values")
    return float(out) if out.ndim == 0 else out


def hankel1(n: int, x):
    """H_n^(1)(x) = J_n(x) + i Y_n(x) for integer n >= 0 and x > 0.

    Assembled from the real parts so Re/Im agree bitwise with bessel_j and
    bessel_y.
    """
    n = _check_order(n)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise NonpositiveArgument("hankel1 requires x > 0")
    out = _sp.jv(n, x) + 1j * _sp.yv(n, x)
    if not np.all(np.isfinite(out)):
        raise ValueError(f"hankel1({n}) produced non-finite values")
    return complex(out) if out.ndim == 0 else out
