"""Truncated Witt vectors W_M(k) over a finite field k.

Two engines are provided and kept in agreement by the test-suite:

* ``witt_add`` / ``witt_mul`` evaluate the universal Witt sum and product
  polynomials, derived once per (p, M) by inverting the ghost map over the
  integers and cached.
* ``ZqRing`` models W_L(k) as (Z/p^L)[x]/(F) where F is the integer lift of
  the modulus of k.  It is much faster and is what the series code uses.
  ``ZqRing.from_witt`` / ``ZqRing.to_witt`` convert through Teichmueller
  digits, x = sum_i p^i [x_i^(p^-i)].
"""

from __future__ import annotations

import functools
from typing import List, Sequence, Tuple

import sympy

from .errors import NotInvertibleError, ParameterError
from .fields import FiniteField

# ---------------------------------------------------------------------------
# The unramified ring (Z/p^L)[x]/(F)


class ZqRing:
    """W_L(k) in the power basis of the lifted modulus.

    Elements are tuples of ``N0`` ints in ``[0, p**L)``.  ``sigma`` is the
    Frobenius lift, x -> the root of F congruent to x**p.
    """

    def __init__(self, field: FiniteField, L: int):
        if L < 1:
            raise ParameterError("Witt length must be at least 1")
        self.field = field
        self.p = field.p
        self.N0 = field.N0
        self.L = L
        self.mod = self.p ** L
        self.fmod = tuple(field.params.modulus)
        self.zero = (0,) * self.N0
        self.one = (1,) + (0,) * (self.N0 - 1)
        self._teich = {}
        self._sigma_cols = self._frobenius_matrix()
        self._sigma_pows = {1: self._sigma_cols}

    # basic arithmetic

    def add(self, a, b):
        m = self.mod
        return tuple((x + y) % m for x, y in zip(a, b))

    def sub(self, a, b):
        m = self.mod
        return tuple((x - y) % m for x, y in zip(a, b))

    def neg(self, a):
        m = self.mod
        return tuple((-x) % m for x in a)

    def scal(self, n: int, a):
        m = self.mod
        return tuple((n * x) % m for x in a)

    def from_int(self, n: int):
        return ((n % self.mod),) + (0,) * (self.N0 - 1)

    def is_zero(self, a) -> bool:
        return not any(a)

    def mul(self, a, b):
        n = self.N0
        if n == 1:
            return ((a[0] * b[0]) % self.mod,)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        fm = self.fmod
        for d in range(2 * n - 2, n - 1, -1):
            c = prod[d]
            if c:
                base = d - n
                for i in range(n):
                    prod[base + i] -= c * fm[i]
        m = self.mod
        return tuple(c % m for c in prod[:n])

    def pow(self, a, e: int):
        result = self.one
        base = a
        while e > 0:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def valuation(self, a) -> int:
        """p-adic valuation, ``L`` for zero."""
        v = self.L
        for x in a:
            if x:
                k = 0
                while x % self.p == 0:
                    x //= self.p
                    k += 1
                v = min(v, k)
        return v

    def is_unit(self, a) -> bool:
        return any(x % self.p for x in a)

    def inv(self, a):
        if not self.is_unit(a):
            raise NotInvertibleError("element is not a unit of W_L(k)")
        F = self.field
        y = self.lift(F.inv(self.residue(a)))
        two = self.from_int(2)
        prec = 1
        while prec < self.L:
            y = self.mul(y, self.sub(two, self.mul(a, y)))
            prec *= 2
        return y

    def div_p(self, a, k: int = 1):
        """Exact division by p**k; the result is taken modulo p**L."""
        pk = self.p ** k
        if any(x % pk for x in a):
            raise ParameterError("element is not divisible by p^k")
        return tuple(x // pk for x in a)

    def reduce_to(self, other: "ZqRing", a):
        """Image in a ring of smaller (or equal) length."""
        return tuple(x % other.mod for x in a)

    # residue field

    def residue(self, a) -> int:
        return self.field.from_coords([x % self.p for x in a])

    def lift(self, x: int):
        """Coordinate lift of a residue element (digits in [0, p))."""
        return tuple(self.field.coords(x))

    def teich(self, x: int):
        """Teichmueller representative of an element of k."""
        t = self._teich.get(x)
        if t is None:
            if x == 0:
                t = self.zero
            else:
                t = self.pow(self.lift(x), self.field.q ** (self.L - 1))
            self._teich[x] = t
        return t

    # Frobenius

    def _eval_fmod(self, y):
        acc = self.zero
        for c in reversed(self.fmod):
            acc = self.add(self.mul(acc, y), self.from_int(c))
        return acc

    def _eval_dfmod(self, y):
        acc = self.zero
        for i in range(len(self.fmod) - 1, 0, -1):
            acc = self.add(self.mul(acc, y), self.from_int(i * self.fmod[i]))
        return acc

    def _frobenius_matrix(self):
        n = self.N0
        if n == 1:
            return [(1,)]
        x = (0, 1) + (0,) * (n - 2)
        theta = self.pow(x, self.p)
        for _ in range(self.L.bit_length() + 1):
            theta = self.sub(theta, self.mul(self._eval_fmod(theta), self.inv(self._eval_dfmod(theta))))
        cols = []
        cur = self.one
        for _ in range(n):
            cols.append(cur)
            cur = self.mul(cur, theta)
        return cols

    def _apply_cols(self, cols, a):
        n, m = self.N0, self.mod
        out = [0] * n
        for i, c in enumerate(a):
            if c:
                col = cols[i]
                for j in range(n):
                    out[j] += c * col[j]
        return tuple(v % m for v in out)

    def _cols_for(self, k):
        k %= self.N0
        cols = self._sigma_pows.get(k)
        if cols is None:
            if k == 0:
                cols = [tuple(1 if i == j else 0 for i in range(self.N0)) for j in range(self.N0)]
            else:
                prev = self._cols_for(k - 1)
                cols = [self._apply_cols(self._sigma_cols, c) for c in prev]
            self._sigma_pows[k] = cols
        return cols

    def sigma(self, a, k: int = 1):
        """k-th power of the Frobenius; negative k allowed."""
        if self.N0 == 1:
            return a
        return self._apply_cols(self._cols_for(k), a)

    def trace(self, a):
        acc = self.zero
        for k in range(self.N0):
            acc = self.add(acc, self.sigma(a, k))
        return acc

    def prime_value(self, a) -> int:
        """Integer value of an element of W_L(F_p)."""
        if any(a[1:]):
            raise ParameterError("element is not in W_L(F_p)")
        return a[0]

    # Witt components

    def from_witt(self, comps: Sequence[int]):
        F = self.field
        acc = self.zero
        pk = 1
        for i, x in enumerate(comps[: self.L]):
            if x:
                acc = self.add(acc, self.scal(pk, self.teich(F.frob(x, -i))))
            pk *= self.p
        return acc

    def to_witt(self, a) -> Tuple[int, ...]:
        F = self.field
        comps = []
        cur = a
        for i in range(self.L):
            y = self.residue(cur)
            comps.append(F.frob(y, i))
            if i + 1 < self.L:
                cur = self.div_p(self.sub(cur, self.teich(y)))
        return tuple(comps)

    def random(self, rng):
        return tuple(rng.randrange(self.mod) for _ in range(self.N0))

    def __repr__(self):
        return f"ZqRing(p={self.p}, N0={self.N0}, L={self.L})"


@functools.lru_cache(maxsize=None)
def zq_ring(field: FiniteField, L: int) -> ZqRing:
    return ZqRing(field, L)


# ---------------------------------------------------------------------------
# Universal Witt polynomials


@functools.lru_cache(maxsize=None)
def _witt_polys(p: int, M: int):
    """Sum, product and negation polynomials for length M, reduced mod p.

    Each polynomial is a tuple of (coefficient, exponent-vector) pairs in the
    variables X_0..X_{M-1}, Y_0..Y_{M-1}.
    """
    X = sympy.symbols(f"X0:{M}")
    Y = sympy.symbols(f"Y0:{M}")
    gens = X + Y

    def ghost(V, n):
        return sympy.Poly(sum(p ** i * V[i] ** (p ** (n - i)) for i in range(n + 1)), *gens, domain="ZZ")

    def invert(target):
        out = []
        for n in range(M):
            num = target(n)
            for i, Si in enumerate(out):
                num = num - Si ** (p ** (n - i)) * p ** i
            out.append(num.exquo_ground(p ** n))
        return out

    S = invert(lambda n: ghost(X, n) + ghost(Y, n))
    P = invert(lambda n: ghost(X, n) * ghost(Y, n))
    N = invert(lambda n: -ghost(X, n))

    def compact(polys):
        res = []
        for poly in polys:
            terms = []
            for exps, c in poly.terms():
                c = int(c) % p
                if c:
                    terms.append((c, tuple((k, e) for k, e in enumerate(exps) if e)))
            res.append(tuple(sorted(terms)))
        return tuple(res)

    return compact(S), compact(P), compact(N)


def _eval_polys(F: FiniteField, polys, values):
    out = []
    for terms in polys:
        acc = 0
        for c, mono in terms:
            t = F.from_int(c)
            for k, e in mono:
                t = F.mul(t, F.pow(values[k], e))
                if t == 0:
                    break
            acc = F.add(acc, t)
        out.append(acc)
    return tuple(out)


# ---------------------------------------------------------------------------
# Witt vectors


class WittVec:
    """A length-M Witt vector over k with components in encoded form.

    Arithmetic operators go through ``ZqRing``; the module-level functions
    ``witt_add`` and ``witt_mul`` use the Witt polynomials instead.
    """

    __slots__ = ("field", "comps")

    def __init__(self, field: FiniteField, comps: Sequence[int]):
        if len(comps) < 1:
            raise ParameterError("Witt length must be at least 1")
        self.field = field
        self.comps = tuple(int(c) for c in comps)

    @property
    def length(self) -> int:
        return len(self.comps)

    @classmethod
    def zero(cls, field, M):
        return cls(field, (0,) * M)

    @classmethod
    def one(cls, field, M):
        return cls(field, (1,) + (0,) * (M - 1))

    @classmethod
    def from_int(cls, field, M, n):
        R = zq_ring(field, M)
        return cls.from_zq(R, R.from_int(n))

    @classmethod
    def from_zq(cls, R: ZqRing, a):
        return cls(R.field, R.to_witt(a))

    def to_zq(self, R: ZqRing = None):
        if R is None:
            R = zq_ring(self.field, self.length)
        return R.from_witt(self.comps)

    def _ring(self, other):
        if not isinstance(other, WittVec):
            raise ParameterError("expected a WittVec")
        if other.field is not self.field or other.length != self.length:
            raise ParameterError("Witt vectors of different length or field")
        return zq_ring(self.field, self.length)

    def __add__(self, other):
        R = self._ring(other)
        return WittVec.from_zq(R, R.add(self.to_zq(R), other.to_zq(R)))

    def __sub__(self, other):
        R = self._ring(other)
        return WittVec.from_zq(R, R.sub(self.to_zq(R), other.to_zq(R)))

    def __neg__(self):
        R = zq_ring(self.field, self.length)
        return WittVec.from_zq(R, R.neg(self.to_zq(R)))

    def __mul__(self, other):
        R = self._ring(other)
        return WittVec.from_zq(R, R.mul(self.to_zq(R), other.to_zq(R)))

    def truncate(self, M: int) -> "WittVec":
        return WittVec(self.field, self.comps[:M])

    def __eq__(self, other):
        return isinstance(other, WittVec) and other.field is self.field and other.comps == self.comps

    def __hash__(self):
        return hash((id(self.field), self.comps))

    def __repr__(self):
        return f"WittVec({[self.field.coords(c) for c in self.comps]})"

    def is_zero(self) -> bool:
        return not any(self.comps)


def _check_pair(x: WittVec, y: WittVec):
    if x.field is not y.field:
        raise ParameterError("Witt vectors over different fields")
    if x.length != y.length:
        raise ParameterError("Witt vectors of different length")


def witt_add(x: WittVec, y: WittVec) -> WittVec:
    """Sum through the cached Witt addition polynomials."""
    _check_pair(x, y)
    S, _, _ = _witt_polys(x.field.p, x.length)
    return WittVec(x.field, _eval_polys(x.field, S, x.comps + y.comps))


def witt_mul(x: WittVec, y: WittVec) -> WittVec:
    """Product through the cached Witt multiplication polynomials."""
    _check_pair(x, y)
    _, P, _ = _witt_polys(x.field.p, x.length)
    return WittVec(x.field, _eval_polys(x.field, P, x.comps + y.comps))


def witt_neg(x: WittVec) -> WittVec:
    _, _, N = _witt_polys(x.field.p, x.length)
    return WittVec(x.field, _eval_polys(x.field, N, x.comps + (0,) * x.length))


def witt_frobenius(x: WittVec, k: int = 1) -> WittVec:
    """sigma^k: the p^k-th power map applied to every component."""
    F = x.field
    return WittVec(F, tuple(F.frob(c, k) for c in x.comps))


def verschiebung(x: WittVec) -> WittVec:
    return WittVec(x.field, (0,) + x.comps[:-1])


def teichmuller(field: FiniteField, c: int, M: int) -> WittVec:
    return WittVec(field, (c,) + (0,) * (M - 1))


def witt_trace(x: WittVec) -> WittVec:
    """Sum of the N0 Frobenius conjugates."""
    acc = witt_frobenius(x, 0)
    for n in range(1, x.field.N0):
        acc = witt_add(acc, witt_frobenius(x, n))
    return acc


def prime_value(x: WittVec) -> int:
    """The integer mod p^M represented by an element of W_M(F_p)."""
    R = zq_ring(x.field, x.length)
    return R.prime_value(x.to_zq(R))


def _inverse_mod(matrix: List[List[int]], modulus: int) -> List[List[int]]:
    m = sympy.Matrix(matrix)
    try:
        inv = m.inv_mod(modulus)
    except ValueError as exc:
        raise ParameterError("not a basis: Gram matrix of traces is singular mod p") from exc
    return [[int(inv[i, j]) % modulus for j in range(m.cols)] for i in range(m.rows)]


def dual_basis(basis: Sequence[WittVec]) -> List[WittVec]:
    """Trace-dual basis: Tr(alpha_i * beta_j) = delta_ij."""
    if not basis:
        raise ParameterError("empty basis")
    F = basis[0].field
    M = basis[0].length
    if len(basis) != F.N0:
        raise ParameterError(f"not a basis: need {F.N0} elements")
    R = zq_ring(F, M)
    b = [x.to_zq(R) for x in basis]
    gram = [[R.prime_value(R.trace(R.mul(bi, bj))) for bj in b] for bi in b]
    C = _inverse_mod(gram, R.mod)
    out = []
    for i in range(F.N0):
        acc = R.zero
        for j in range(F.N0):
            acc = R.add(acc, R.scal(C[i][j], b[j]))
        out.append(WittVec.from_zq(R, acc))
    return out


def power_basis(field: FiniteField, M: int) -> List[WittVec]:
    """The basis 1, x, ..., x^(N0-1) of the lifted modulus, as Witt vectors."""
    R = zq_ring(field, M)
    out = []
    for i in range(field.N0):
        e = tuple(1 if j == i else 0 for j in range(field.N0))
        out.append(WittVec.from_zq(R, e))
    return out


@functools.lru_cache(maxsize=None)
def _alpha0_comps(field: FiniteField, M: int) -> Tuple[int, ...]:
    # Tr mod p^(j+1) only sees components 0..j, and changing component j
    # moves the trace by p^j times a surjective map, so a greedy choice of the
    # least component at each step is the least vector in coordinate order.
    comps = []
    for j in range(M):
        R = zq_ring(field, j + 1)
        target = R.from_int(1)
        for code in range(field.q):
            c = field.from_code(code)
            a = R.from_witt(tuple(comps) + (c,))
            if R.trace(a) == target:
                comps.append(c)
                break
        else:
            raise AssertionError("trace is not surjective")
    return tuple(comps)


def pick_alpha0(field: FiniteField, M: int) -> WittVec:
    """Least alpha_0 (components compared in coordinate order) with Tr = 1."""
    return WittVec(field, _alpha0_comps(field, M))
