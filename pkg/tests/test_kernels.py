"""The compiled kernels and their pure-Python twins must agree bit for bit."""

import os
import random
import subprocess
import sys

import pytest

from wittram import _pykernels, kernels
from wittram.fields import get_field
from wittram.witt import zq_ring

ck = pytest.importorskip("wittram._ckernels")


def _series(rng, ring, n):
    return [ring.random(rng) for _ in range(n)]


@pytest.mark.parametrize("p,N0", [(2, 1), (2, 4), (3, 3), (7, 2)])
def test_fq(p, N0):
    F = get_field(p, N0)
    rng = random.Random(p + N0)
    for n in (1, 5, 40):
        a, b = _series(rng, F, n), _series(rng, F, n)
        assert ck.fq_conv(a, b, n, F.order, F._zech) == _pykernels.fq_conv(a, b, n, F.order, F._zech)
        a[0] = F.random(rng, nonzero=True)
        args = (a, n, F.order, F._zech, F._neg_shift)
        assert ck.fq_inverse(*args) == _pykernels.fq_inverse(*args)


@pytest.mark.parametrize("p,N0,L", [(2, 3, 4), (3, 2, 3), (5, 1, 2)])
def test_zq(p, N0, L):
    R = zq_ring(get_field(p, N0), L)
    rng = random.Random(L)
    for n in (1, 7, 25):
        a, b = _series(rng, R, n), _series(rng, R, n)
        assert ck.zq_conv(a, b, n, R.N0, R.fmod, R.mod) == _pykernels.zq_conv(a, b, n, R.N0, R.fmod, R.mod)


@pytest.mark.parametrize("p,M", [(2, 1), (2, 4), (3, 3), (5, 2)])
def test_howell_and_reduction(p, M):
    rng = random.Random(p * M)
    mod = p**M
    for _ in range(10):
        ncols = rng.randint(1, 12)
        rows = [[rng.randrange(mod) * p ** rng.randrange(M) % mod for _ in range(ncols)] for _ in range(rng.randint(0, 10))]
        h1 = ck.howell_rows([list(r) for r in rows], ncols, p, M)
        h2 = _pykernels.howell_rows([list(r) for r in rows], ncols, p, M)
        assert [list(r) for r in h1] == [list(r) for r in h2]
        piv = [next(i for i, a in enumerate(r) if a) for r in h2]
        vecs = [[rng.randrange(mod) for _ in range(ncols)] for _ in range(5)]
        assert [list(x) for x in ck.reduce_many(h2, piv, vecs, p, mod)] == [
            list(x) for x in _pykernels.reduce_many(h2, piv, vecs, p, mod)
        ]
        for v in vecs:
            assert list(ck.reduce_vector(h2, piv, v, p, mod)) == list(_pykernels.reduce_vector(h2, piv, v, p, mod))


def test_environment_forces_fallback():
    env = dict(os.environ, WITTRAM_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from wittram import kernels; print(kernels.BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


def test_use_backend_switches():
    before = kernels.BACKEND
    try:
        kernels.use_backend("python")
        assert kernels.BACKEND == "python"
        kernels.use_backend("cython")
        assert kernels.BACKEND == "cython"
        with pytest.raises(ValueError):
            kernels.use_backend("fortran")
    finally:
        kernels.use_backend(before)
