"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Each workload runs once per backend on identical inputs; the outputs are
compared before any timing is reported.
"""

import argparse
import random
import statistics
import time

from wittram import kernels
from wittram.fields import get_field
from wittram.magnus import MagnusParams
from wittram.ramification import build_ideal_Av
from wittram.witt import zq_ring


def _fq_series(rng):
    F = get_field(3, 4)
    a = {i: F.random(rng) for i in range(400)}
    b = {i: F.random(rng) for i in range(400)}
    return lambda: kernels.series_mul(F, a, b, 400)


def _zq_series(rng):
    R = zq_ring(get_field(2, 3), 4)
    a = {i: R.random(rng) for i in range(120)}
    b = {i: R.random(rng) for i in range(120)}
    return lambda: kernels.series_mul(R, a, b, 120)


def _howell(rng):
    p, M, n = 3, 3, 60
    rows = [[rng.randrange(p**M) * (p ** rng.randrange(M)) % p**M for _ in range(n)] for _ in range(80)]
    return lambda: kernels.howell_rows([list(r) for r in rows], n, p, M)


def _ideal(rng):
    P = MagnusParams(2, 2, 2, 3)
    return lambda: build_ideal_Av(2, P).rows


WORKLOADS = {
    "series_mul F_81, 400 terms": _fq_series,
    "series_mul W_4(F_8), 120 terms": _zq_series,
    "howell_rows 80x60 over Z/27": _howell,
    "ideal A(2), p=2 N0=2 M=2 C=3": _ideal,
}


def _time(fn, repeat):
    out, ts = None, []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        ts.append(time.perf_counter() - t)
    return out, statistics.median(ts)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    try:
        kernels.use_backend("cython")
    except ImportError:
        raise SystemExit("compiled kernels are not built; run pip install -e . first")
    print(f"{'workload':34s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, make in WORKLOADS.items():
        fn = make(random.Random(args.seed))
        kernels.use_backend("python")
        ref, tp = _time(fn, args.repeat)
        kernels.use_backend("cython")
        got, tc = _time(fn, args.repeat)
        if ref != got:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:34s} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
