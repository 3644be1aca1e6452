"""Dispatch to the compiled inner loops, or their pure-Python twins.

The compiled module ``_ckernels`` is used when it imports; setting the
environment variable ``WITTRAM_PURE_PYTHON=1`` forces the fallback.  Both
expose identical functions, so results never depend on the backend.
"""

from __future__ import annotations

import os

from . import _pykernels
from .fields import FiniteField

_impl = _pykernels
BACKEND = "python"
if os.environ.get("WITTRAM_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _compiled

        _impl = _compiled
        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        pass

# Compiled loops keep W_L(k) coordinates in 64-bit words.
_C_ZQ_LIMIT = 1 << 24


def use_backend(name: str) -> None:
    """Switch backends at run time ("python" or "cython"); used by benchmarks."""
    global _impl, BACKEND
    if name == "python":
        _impl, BACKEND = _pykernels, "python"
    elif name == "cython":
        from . import _ckernels as _compiled

        _impl, BACKEND = _compiled, "cython"
    else:
        raise ValueError(f"unknown backend {name!r}")


def _dense(ring, coeffs, lo, n):
    zero = ring.zero
    out = [zero] * n
    for k, c in coeffs.items():
        i = k - lo
        if 0 <= i < n:
            out[i] = c
    return out


def series_mul(ring, a: dict, b: dict, prec):
    """Product of two sparse series; terms at exponents >= prec dropped."""
    la, lb = min(a), min(b)
    ha, hb = max(a), max(b)
    lo = la + lb
    hi = ha + hb + 1
    if prec is not None:
        hi = min(hi, prec)
    n = hi - lo
    if n <= 0:
        return {}
    A = _dense(ring, a, la, min(ha - la + 1, n))
    B = _dense(ring, b, lb, min(hb - lb + 1, n))
    if isinstance(ring, FiniteField):
        C = _impl.fq_conv(A, B, n, ring.order, ring._zech)
    else:
        impl = _impl if ring.mod < _C_ZQ_LIMIT else _pykernels
        C = impl.zq_conv(A, B, n, ring.N0, ring.fmod, ring.mod)
    zero = ring.zero
    return {lo + i: c for i, c in enumerate(C) if c != zero}


def unit_inverse(ring, u, n):
    """First n coefficients of 1/u where u is a dense array with u[0] a unit."""
    if isinstance(ring, FiniteField):
        return _impl.fq_inverse(u, n, ring.order, ring._zech, ring._neg_shift)
    # W_L(k): Newton iteration b <- b (2 - u b) on truncated products
    b = [ring.inv(u[0])]
    cur = 1
    while cur < n:
        cur = min(2 * cur, n)
        ub = _trunc_mul(ring, u[:cur], b, cur)
        two_minus = [ring.neg(c) for c in ub]
        two_minus[0] = ring.add(two_minus[0], ring.from_int(2))
        b = _trunc_mul(ring, b, two_minus, cur)
    return b[:n]


def _trunc_mul(ring, a, b, n):
    impl = _impl if ring.mod < _C_ZQ_LIMIT else _pykernels
    return impl.zq_conv(a, b, n, ring.N0, ring.fmod, ring.mod)


def howell_rows(rows, ncols, p, M):
    return _impl.howell_rows(rows, ncols, p, M)


def reduce_vector(rows, pivots, vec, p, mod):
    return _impl.reduce_vector(rows, pivots, vec, p, mod)


def reduce_many(rows, pivots, vecs, p, mod):
    return _impl.reduce_many(rows, pivots, vecs, p, mod)
