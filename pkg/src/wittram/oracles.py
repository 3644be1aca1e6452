"""Slow reference implementations used to cross-check the fast engines.

Each routine here takes a different route from the production code:
ghost components over an integer lift for Witt vectors, rational power
series for the exponential, nested loops over every index for F_gamma,
a brute-force span for small submodules and plain coefficient extraction
for induced automorphism tables.  Nothing in this module is imported by
the engines themselves.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Set, Tuple

from .fields import FiniteField
from .magnus import MagnusElem, MagnusParams, magnus_mul


# ---------------------------------------------------------------------------
# Witt vectors through ghost components


def _pmul(a: Sequence[int], b: Sequence[int], fmod: Sequence[int], mod: int) -> List[int]:
    n = len(fmod)
    raw = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                raw[i + j] += x * y
    for d in range(len(raw) - 1, n - 1, -1):
        c = raw[d]
        if c:
            for i in range(n):
                raw[d - n + i] -= c * fmod[i]
    return [v % mod for v in raw[:n]]


def _ppow(a, e, fmod, mod):
    out = [1] + [0] * (len(fmod) - 1)
    base = list(a)
    while e:
        if e & 1:
            out = _pmul(out, base, fmod, mod)
        e >>= 1
        if e:
            base = _pmul(base, base, fmod, mod)
    return out


def _ghost(comps, p, n, fmod, mod):
    acc = [0] * len(fmod)
    for i in range(n + 1):
        t = _ppow(comps[i], p ** (n - i), fmod, mod)
        acc = [(x + p**i * y) % mod for x, y in zip(acc, t)]
    return acc


def _unghost(ghosts, p, fmod, mod):
    comps = []
    for n, w in enumerate(ghosts):
        num = list(w)
        for i, c in enumerate(comps):
            t = _ppow(c, p ** (n - i), fmod, mod)
            num = [(x - p**i * y) % mod for x, y in zip(num, t)]
        if any(x % p**n for x in num):
            raise AssertionError("ghost inversion is not exact")
        comps.append([(x // p**n) % mod for x in num])
    return comps


def ghost_witt(op: str, F: FiniteField, x: Sequence[int], y: Sequence[int]) -> Tuple[int, ...]:
    """x + y or x * y for Witt vectors with components in F (encoded ints).

    Components are lifted coordinatewise to Z[xi]/(f) with f the integer
    lift of the modulus, the ghost components are added or multiplied, and
    the ghost map is inverted by exact division.  Working modulo p^M is
    enough: component n needs its numerator modulo p^(n + 1).
    """
    M = len(x)
    p = F.p
    mod = p**M
    fmod = list(F.params.modulus)[: F.N0]  # low coefficients of the monic modulus
    X = [list(F.coords(c)) for c in x]
    Y = [list(F.coords(c)) for c in y]
    gx = [_ghost(X, p, n, fmod, mod) for n in range(M)]
    gy = [_ghost(Y, p, n, fmod, mod) for n in range(M)]
    if op == "add":
        gz = [[(a + b) % mod for a, b in zip(u, v)] for u, v in zip(gx, gy)]
    elif op == "mul":
        gz = [_pmul(u, v, fmod, mod) for u, v in zip(gx, gy)]
    else:
        raise ValueError(op)
    comps = _unghost(gz, p, fmod, mod)
    return tuple(F.from_coords([c % p for c in z]) for z in comps)


# ---------------------------------------------------------------------------
# the exponential over Q


def rational_ah(beta: int, p: int, n: int) -> List[Fraction]:
    """Coefficients of exp(sum_i beta X^(p^i) / p^i) up to X^(n-1), over Q.

    For an integer beta sigma acts trivially.  exp(L) is expanded by the
    recurrence n e_n = sum_k k l_k e_(n-k) with L = sum l_k X^k.
    """
    lcoef = [Fraction(0)] * n
    k = 1
    while k < n:
        lcoef[k] = Fraction(beta, k)
        k *= p
    e = [Fraction(1)] + [Fraction(0)] * (n - 1)
    for m in range(1, n):
        acc = Fraction(0)
        for k in range(1, m + 1):
            if lcoef[k]:
                acc += k * lcoef[k] * e[m - k]
        e[m] = acc / m
    return e


# ---------------------------------------------------------------------------
# F_gamma by nested loops


def nested_F(gamma, params: MagnusParams, depth: int = 16) -> MagnusElem:
    """F_gamma assembled straight from its three defining sums.

    Every (a, n), (a1, a2, n) and (a1, n1, a2, n2) with a's <= C prime to p,
    0 <= n, n1 <= M and n1 - depth <= n2 < n1 is tried against gamma.  All
    values are compared after scaling by p^depth, in integers.
    """
    g = Fraction(gamma)
    p, C, M = params.p, params.C, params.M
    R = params.ring
    acc = MagnusElem.zero(params)
    if g == 0:
        return MagnusElem.generator(params, 0)
    scaled = g * p**depth
    if scaled.denominator != 1:
        return acc
    G = scaled.numerator
    avals = [a for a in range(1, C + 1) if a % p]
    for a in avals:
        for n in range(M + 1):
            if p ** (n + depth) * a == G:
                acc = acc + MagnusElem.generator(params, a, n, R.from_int(p**n * a))
    for n in range(M + 1):
        for a1 in avals:
            for a2 in avals:
                if p ** (n + depth) * (a1 + a2) == G:
                    prod = magnus_mul(MagnusElem.generator(params, a1, n), MagnusElem.generator(params, a2, n))
                    acc = acc - prod.scale(R.from_int(p**n * a1))
    for n1 in range(M + 1):
        for n2 in range(n1 - depth, n1):
            for a1 in avals:
                for a2 in avals:
                    if p ** (n1 + depth) * a1 + p ** (n2 + depth) * a2 == G:
                        d1 = MagnusElem.generator(params, a1, n1)
                        d2 = MagnusElem.generator(params, a2, n2)
                        br = magnus_mul(d1, d2) - magnus_mul(d2, d1)
                        acc = acc - br.scale(R.from_int(p**n1 * a1))
    return acc


# ---------------------------------------------------------------------------
# spans over Z/p^M by enumeration


def brute_span(rows: Iterable[Sequence[int]], mod: int) -> Set[Tuple[int, ...]]:
    """Every element of the Z/mod-span of ``rows``, by closure."""
    rows = [tuple(r) for r in rows]
    if not rows:
        return set()
    n = len(rows[0])
    span = {tuple([0] * n)}
    for r in rows:
        new = set()
        for s in span:
            for k in range(mod):
                new.add(tuple((a + k * b) % mod for a, b in zip(s, r)))
        span = new
    return span


# ---------------------------------------------------------------------------
# induced tables from coefficients of eta^{-1}(t)^{-b}


def naive_alpha(F: FiniteField, eta_coeffs: Dict[int, int], a_max: int, b_max: int) -> Dict[Tuple[int, int, int], int]:
    """alpha_{a,b,-s mod N} read off from eta^{-1}(t)^{-b} by plain loops.

    eta^{-1} is found by the iteration h <- h - (eta(h) - t) / eta_1 on
    truncated power series, and its -b-th power by repeated multiplication
    of the inverse; both use only dense lists.
    """
    p, N = F.p, F.N0
    prec = b_max + 2

    def mul(x, y):
        out = [0] * prec
        for i, u in enumerate(x):
            if u:
                for j in range(prec - i):
                    if y[j]:
                        out[i + j] = F.add(out[i + j], F.mul(u, y[j]))
        return out

    def compose(f, g):
        # f(g) for f with f[0] = 0 and g with g[0] = 0
        out = [0] * prec
        pw = [1] + [0] * (prec - 1)
        for k in range(1, prec):
            pw = mul(pw, g)
            if k < len(f) and f[k]:
                out = [F.add(o, F.mul(f[k], c)) for o, c in zip(out, pw)]
        return out

    eta = [0] * prec
    for k, c in eta_coeffs.items():
        if k < prec:
            eta[k] = c
    # h = eta^{-1}: iterate h <- h - (eta(h) - t) / eta_1
    inv1 = F.inv(eta[1])
    h = [0, inv1] + [0] * (prec - 2)
    for _ in range(prec):
        e = compose(eta, h)
        e[1] = F.sub(e[1], 1)
        h = [F.sub(x, F.mul(inv1, y)) for x, y in zip(h, e)]
    # h(t) = t u(t); h^{-b} = t^{-b} u^{-b}
    u = h[1:] + [0]
    uinv = [0] * prec
    uinv[0] = F.inv(u[0])
    for m in range(1, prec):
        acc = 0
        for k in range(1, m + 1):
            acc = F.add(acc, F.mul(u[k], uinv[m - k]))
        uinv[m] = F.neg(F.mul(acc, uinv[0]))
    out: Dict[Tuple[int, int, int], int] = {}
    cur = [1] + [0] * (prec - 1)
    for b in range(1, b_max + 1):
        cur = mul(cur, uinv)
        if b % p == 0:
            continue
        # coefficient of t^{-c} in t^{-b} u^{-b} is cur[b - c]
        for c in range(1, b + 1):
            val = cur[b - c]
            if val == 0:
                continue
            s, a = 0, c
            while a % p == 0:
                a //= p
                s += 1
            if a > a_max:
                continue
            key = (a, b, (-s) % N)
            out[key] = F.add(out.get(key, 0), F.frob(val, -s))
    return {k: v for k, v in out.items() if v}


def all_index_pairs(p: int, C: int, N0: int):
    """(a, n) for every generator D_an of the truncation."""
    return [(a, n) for a in range(1, C + 1) if a % p for n in range(N0)]


def product_rows(mod: int, n: int):
    return list(itertools.product(range(mod), repeat=n))
