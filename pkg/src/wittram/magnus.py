"""The algebra A_{C,M} = W_M(k)<<D_0, D_an>> truncated modulo J^3.

Generators are D_0 and D_an with 1 <= a <= C prime to p and n in Z/N0.  An
element is a scalar plus a linear and a quadratic part; products of three
generators vanish.  Coefficients are central and live either in W_M(k)
(a ``ZqRing``) or in Laurent series over it (``LaurentScalars``).

For linear algebra over Z/p^M the augmentation part of an element is
flattened to a vector: D_0 first, then D(a, n) in lexicographic order, then
the ordered pairs row-major, each W_M(k) coefficient contributing its N0
power-basis coordinates.  Submodules are kept in Howell normal form, which
is canonical, so equality of submodules is equality of row lists.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from . import kernels
from .errors import ParameterError
from .fields import FiniteField, get_field
from .series import LaurentSeries, sigma_act
from .witt import ZqRing, dual_basis, pick_alpha0, power_basis, zq_ring


class GenIndex(NamedTuple):
    """D_0 is ``GenIndex(0, 0)``; otherwise D_(a, n)."""

    a: int
    n: int

    @property
    def is_d0(self) -> bool:
        return self.a == 0

    def __str__(self):
        return "D0" if self.a == 0 else f"D({self.a},{self.n})"


D0 = GenIndex(0, 0)


@dataclass(frozen=True)
class MagnusParams:
    """Residue field data plus the truncation (C, M)."""

    p: int
    N0: int
    M: int
    C: int
    modulus: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.M < 1:
            raise ParameterError("M must be at least 1")
        if self.C < 1:
            raise ParameterError("C must be at least 1")
        if self.N0 < 1:
            raise ParameterError("N0 must be at least 1")

    @property
    def field(self) -> FiniteField:
        return get_field(self.p, self.N0, self.modulus)

    @property
    def ring(self) -> ZqRing:
        return zq_ring(self.field, self.M)

    @property
    def avals(self) -> Tuple[int, ...]:
        return tuple(a for a in range(1, self.C + 1) if a % self.p)

    @property
    def gens(self) -> Tuple[GenIndex, ...]:
        return _gens(self.p, self.N0, self.C)

    def gen_index(self, a: int, n: int) -> GenIndex:
        if a == 0:
            return D0
        if a % self.p == 0 or a < 0:
            raise ParameterError(f"a={a} is not prime to p")
        return GenIndex(a, n % self.N0)

    def in_range(self, g: GenIndex) -> bool:
        return g.a <= self.C

    @property
    def ambient_rank(self) -> int:
        G = len(self.gens)
        return G + G * G

    @property
    def ncols(self) -> int:
        return self.ambient_rank * self.N0


@functools.lru_cache(maxsize=None)
def _gens(p, N0, C):
    out = [D0]
    for a in range(1, C + 1):
        if a % p:
            out.extend(GenIndex(a, n) for n in range(N0))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _position(p, N0, C):
    return {g: i for i, g in enumerate(_gens(p, N0, C))}


# ---------------------------------------------------------------------------
# coefficient rings


class LaurentScalars:
    """Laurent series over W_M(k) as a coefficient ring; sigma sends t to t^p."""

    def __init__(self, R: ZqRing, prec: Optional[int] = None):
        self.base = R
        self.p = R.p
        self.prec = prec
        self.zero = LaurentSeries.zero(R, prec)
        self.one = LaurentSeries.one(R, prec)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def scal(self, n: int, a):
        return a.scale_int(n)

    def from_int(self, n: int):
        return LaurentSeries.one(self.base, self.prec).scale_int(n)

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def sigma(self, a, k: int = 1):
        if k < 0:
            raise ParameterError("Laurent scalars only carry forward sigma")
        return sigma_act(a, k)

    def from_base(self, c):
        return LaurentSeries(self.base, {0: c}, self.prec)

    def __eq__(self, other):
        return isinstance(other, LaurentScalars) and self.base is other.base and self.prec == other.prec

    def __hash__(self):
        return hash((id(self.base), self.prec))


# ---------------------------------------------------------------------------
# elements


class MagnusElem:
    """scalar + sum c_g g + sum c_(g,h) g h, zero coefficients dropped."""

    __slots__ = ("params", "ring", "scalar", "linear", "quad")

    def __init__(self, params: MagnusParams, ring, scalar=None, linear=None, quad=None):
        self.params = params
        self.ring = ring
        iz = ring.is_zero
        self.scalar = ring.zero if scalar is None else scalar
        self.linear = {}
        for g, c in (linear or {}).items():
            if params.in_range(g) and not iz(c):
                self.linear[g] = c
        self.quad = {}
        for (g, h), c in (quad or {}).items():
            if params.in_range(g) and params.in_range(h) and not iz(c):
                self.quad[(g, h)] = c

    # constructors

    @classmethod
    def zero(cls, params, ring=None):
        return cls(params, ring or params.ring)

    @classmethod
    def one(cls, params, ring=None):
        ring = ring or params.ring
        return cls(params, ring, ring.one)

    @classmethod
    def scalar_elem(cls, params, c, ring=None):
        return cls(params, ring or params.ring, c)

    @classmethod
    def generator(cls, params, a: int, n: int = 0, coeff=None, ring=None):
        ring = ring or params.ring
        g = params.gen_index(a, n)
        return cls(params, ring, None, {g: ring.one if coeff is None else coeff})

    @classmethod
    def monomial2(cls, params, g: GenIndex, h: GenIndex, coeff=None, ring=None):
        ring = ring or params.ring
        return cls(params, ring, None, None, {(g, h): ring.one if coeff is None else coeff})

    # predicates

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.scalar) and not self.linear and not self.quad

    def in_augmentation(self) -> bool:
        return self.ring.is_zero(self.scalar)

    def _check(self, other: "MagnusElem"):
        if not isinstance(other, MagnusElem):
            raise TypeError("expected a MagnusElem")
        if self.params != other.params or self.ring != other.ring:
            raise ParameterError("Magnus elements over different parameters")

    def __eq__(self, other):
        if not isinstance(other, MagnusElem):
            return NotImplemented
        return (
            self.params == other.params
            and self.scalar == other.scalar
            and self.linear == other.linear
            and self.quad == other.quad
        )

    def __hash__(self):
        return hash((self.params, tuple(sorted(self.linear)), tuple(sorted(self.quad))))

    # arithmetic

    def _combine(self, other, op):
        self._check(other)
        lin = dict(self.linear)
        for g, c in other.linear.items():
            lin[g] = op(lin[g], c) if g in lin else op(self.ring.zero, c)
        quad = dict(self.quad)
        for k, c in other.quad.items():
            quad[k] = op(quad[k], c) if k in quad else op(self.ring.zero, c)
        return MagnusElem(self.params, self.ring, op(self.scalar, other.scalar), lin, quad)

    def __add__(self, other):
        return self._combine(other, self.ring.add)

    def __sub__(self, other):
        return self._combine(other, self.ring.sub)

    def __neg__(self):
        R = self.ring
        return MagnusElem(
            self.params,
            R,
            R.neg(self.scalar),
            {g: R.neg(c) for g, c in self.linear.items()},
            {k: R.neg(c) for k, c in self.quad.items()},
        )

    def scale(self, c) -> "MagnusElem":
        """Multiply by a central scalar of the coefficient ring."""
        mul = self.ring.mul
        return MagnusElem(
            self.params,
            self.ring,
            mul(c, self.scalar),
            {g: mul(c, v) for g, v in self.linear.items()},
            {k: mul(c, v) for k, v in self.quad.items()},
        )

    def scale_int(self, n: int) -> "MagnusElem":
        s = self.ring.scal
        return MagnusElem(
            self.params,
            self.ring,
            s(n, self.scalar),
            {g: s(n, v) for g, v in self.linear.items()},
            {k: s(n, v) for k, v in self.quad.items()},
        )

    def __mul__(self, other):
        return magnus_mul(self, other)

    def bracket(self, other) -> "MagnusElem":
        return magnus_mul(self, other) - magnus_mul(other, self)

    def mod_j2(self) -> "MagnusElem":
        return MagnusElem(self.params, self.ring, self.scalar, self.linear)

    def quadratic_part(self) -> "MagnusElem":
        return MagnusElem(self.params, self.ring, None, None, self.quad)

    def terms(self):
        """(kind, indices, coefficient) in ambient order."""
        out = []
        if not self.ring.is_zero(self.scalar):
            out.append(("scalar", (), self.scalar))
        for g in sorted(self.linear):
            out.append(("linear", (g,), self.linear[g]))
        for k in sorted(self.quad):
            out.append(("quad", k, self.quad[k]))
        return out

    def __repr__(self):
        parts = []
        for kind, idx, c in self.terms():
            name = "*".join(str(g) for g in idx) or "1"
            parts.append(f"{c}*{name}")
        return "MagnusElem(" + (" + ".join(parts) or "0") + ")"


def magnus_mul(x: MagnusElem, y: MagnusElem) -> MagnusElem:
    """Product in the truncation; monomials of degree three or more vanish."""
    x._check(y)
    R = x.ring
    mul, add = R.mul, R.add
    s0, t0 = x.scalar, y.scalar
    s_zero, t_zero = R.is_zero(s0), R.is_zero(t0)
    scalar = mul(s0, t0)
    lin: Dict[GenIndex, object] = {}
    if not s_zero:
        for g, c in y.linear.items():
            lin[g] = mul(s0, c)
    if not t_zero:
        for g, c in x.linear.items():
            v = mul(c, t0)
            lin[g] = add(lin[g], v) if g in lin else v
    quad: Dict[Tuple[GenIndex, GenIndex], object] = {}

    def put(k, v):
        quad[k] = add(quad[k], v) if k in quad else v

    if not s_zero:
        for k, c in y.quad.items():
            put(k, mul(s0, c))
    if not t_zero:
        for k, c in x.quad.items():
            put(k, mul(c, t0))
    for g, c in x.linear.items():
        for h, d in y.linear.items():
            put((g, h), mul(c, d))
    return MagnusElem(x.params, R, scalar, lin, quad)


def _shift(g: GenIndex, k: int, N0: int) -> GenIndex:
    return g if g.a == 0 else GenIndex(g.a, (g.n + k) % N0)


def magnus_sigma(x: MagnusElem, k: int = 1) -> MagnusElem:
    """sigma^k: coefficients by the ring's sigma, D_an -> D_a,n+k, D_0 fixed."""
    R = x.ring
    N0 = x.params.N0
    sig = R.sigma
    return MagnusElem(
        x.params,
        R,
        sig(x.scalar, k),
        {_shift(g, k, N0): sig(c, k) for g, c in x.linear.items()},
        {(_shift(g, k, N0), _shift(h, k, N0)): sig(c, k) for (g, h), c in x.quad.items()},
    )


def change_ring(x: MagnusElem, ring, fn) -> MagnusElem:
    """Map coefficients with ``fn`` into ``ring``."""
    return MagnusElem(
        x.params,
        ring,
        fn(x.scalar),
        {g: fn(c) for g, c in x.linear.items()},
        {k: fn(c) for k, c in x.quad.items()},
    )


# ---------------------------------------------------------------------------
# D_0n, the bases D_a^(r) and the element e


def alpha0(params: MagnusParams):
    return pick_alpha0(params.field, params.M).to_zq(params.ring)


def d0n(params: MagnusParams, n: int) -> MagnusElem:
    """D_0n = sigma^n(alpha_0) D_0."""
    R = params.ring
    return MagnusElem(params, R, None, {D0: R.sigma(alpha0(params), n)})


def beta_basis(params: MagnusParams) -> List[tuple]:
    """beta_r: the power basis of W_M(k) (r = 1..N0 stored from index 0)."""
    R = params.ring
    return [b.to_zq(R) for b in power_basis(params.field, params.M)]


def alpha_basis(params: MagnusParams) -> List[tuple]:
    """alpha_r with Tr(alpha_i beta_j) = delta_ij."""
    R = params.ring
    return [a.to_zq(R) for a in dual_basis(power_basis(params.field, params.M))]


def d_r(params: MagnusParams, a: int, r: int) -> MagnusElem:
    """D_a^(r) = sum_n sigma^n(beta_r) D_an."""
    R = params.ring
    b = beta_basis(params)[r]
    return MagnusElem(params, R, None, {params.gen_index(a, n): R.sigma(b, n) for n in range(params.N0)})


def linear_in_r_basis(x: MagnusElem) -> Dict[Tuple[int, int], object]:
    """Coefficients of the linear part of x in the D_a^(r) (and D_0) basis.

    Uses D_an = sum_r sigma^n(alpha_r) D_a^(r); keys are (a, r), with
    (0, 0) for D_0.
    """
    params = x.params
    R = x.ring
    base = params.ring
    alphas = alpha_basis(params)
    lift = getattr(R, "from_base", None)
    out: Dict[Tuple[int, int], object] = {}
    for g, c in x.linear.items():
        if g.is_d0:
            out[(0, 0)] = R.add(out[(0, 0)], c) if (0, 0) in out else c
            continue
        for r, al in enumerate(alphas):
            s = base.sigma(al, g.n)
            s = lift(s) if lift else s
            v = R.mul(s, c)
            key = (g.a, r)
            out[key] = R.add(out[key], v) if key in out else v
    return {k: v for k, v in out.items() if not R.is_zero(v)}


def build_e(params: MagnusParams, prec: Optional[int] = None) -> MagnusElem:
    """e = 1 + sum_{a <= C} t^(-a) D_a0 + alpha_0 D_0 with Laurent scalars."""
    R = params.ring
    L = LaurentScalars(R, prec)
    lin = {D0: L.from_base(alpha0(params))}
    for a in params.avals:
        lin[GenIndex(a, 0)] = LaurentSeries.monomial(R, -a, R.one, prec)
    return MagnusElem(params, L, L.one, lin)


# ---------------------------------------------------------------------------
# flattening and submodules over Z/p^M


def flatten(x: MagnusElem) -> List[int]:
    """Coordinates of the augmentation part over Z/p^M."""
    params = x.params
    if not isinstance(x.ring, ZqRing):
        raise ParameterError("only W_M(k) coefficients can be flattened")
    pos = _position(params.p, params.N0, params.C)
    G = len(pos)
    N0 = params.N0
    vec = [0] * params.ncols
    for g, c in x.linear.items():
        base = pos[g] * N0
        vec[base : base + N0] = c
    for (g, h), c in x.quad.items():
        base = (G + pos[g] * G + pos[h]) * N0
        vec[base : base + N0] = c
    return vec


def unflatten(params: MagnusParams, vec: Sequence[int]) -> MagnusElem:
    gens = params.gens
    G = len(gens)
    N0 = params.N0
    lin = {}
    quad = {}
    for i, g in enumerate(gens):
        c = tuple(vec[i * N0 : (i + 1) * N0])
        if any(c):
            lin[g] = c
    for i, g in enumerate(gens):
        for j, h in enumerate(gens):
            base = (G + i * G + j) * N0
            c = tuple(vec[base : base + N0])
            if any(c):
                quad[(g, h)] = c
    return MagnusElem(params, params.ring, None, lin, quad)


def _pivot_cols(rows):
    out = []
    for r in rows:
        for i, v in enumerate(r):
            if v:
                out.append(i)
                break
    return out


class SubmoduleBasis:
    """A Z/p^M-submodule of the flattened augmentation ideal, in Howell form."""

    def __init__(self, params: MagnusParams, rows: Sequence[Sequence[int]], _canonical: bool = False):
        self.params = params
        mod = params.p ** params.M
        if _canonical:
            self.rows = tuple(tuple(r) for r in rows)
        else:
            clean = [[v % mod for v in r] for r in rows]
            self.rows = tuple(tuple(r) for r in kernels.howell_rows(clean, params.ncols, params.p, params.M))
        self.pivots = tuple(_pivot_cols(self.rows))

    @classmethod
    def span(cls, params: MagnusParams, elems: Iterable[MagnusElem], wk: bool = True) -> "SubmoduleBasis":
        """Z/p^M-span of ``elems``, or their W_M(k)-span when ``wk``."""
        vecs = []
        for x in elems:
            vecs.extend(_wk_multiples(x) if wk else [flatten(x)])
        return cls(params, vecs)

    @classmethod
    def zero(cls, params):
        return cls(params, [], _canonical=True)

    @property
    def ambient_rank(self) -> int:
        return self.params.ambient_rank

    def reduce(self, vec: Sequence[int]) -> List[int]:
        p, M = self.params.p, self.params.M
        return kernels.reduce_vector(self.rows, self.pivots, list(vec), p, p**M)

    def contains_vector(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))

    def missing(self, vecs: Sequence[Sequence[int]]) -> List[List[int]]:
        """The vectors of ``vecs`` that do not lie in the submodule."""
        if not vecs:
            return []
        p, M = self.params.p, self.params.M
        rem = kernels.reduce_many(self.rows, self.pivots, vecs, p, p**M)
        return [list(v) for v, r in zip(vecs, rem) if any(r)]

    def contains(self, x: MagnusElem) -> bool:
        return submodule_contains(self, x)

    def includes(self, other: "SubmoduleBasis") -> bool:
        """Whether ``other`` is a submodule of self."""
        self._check(other)
        return not self.missing(list(other.rows))

    def __add__(self, other: "SubmoduleBasis") -> "SubmoduleBasis":
        self._check(other)
        return SubmoduleBasis(self.params, list(self.rows) + list(other.rows))

    def scaled(self, n: int) -> "SubmoduleBasis":
        mod = self.params.p ** self.params.M
        return SubmoduleBasis(self.params, [[n * v % mod for v in r] for r in self.rows])

    def log_order(self) -> int:
        """log_p of the number of elements."""
        p, M = self.params.p, self.params.M
        total = 0
        for r, c in zip(self.rows, self.pivots):
            total += M - _vp(r[c], p)
        return total

    def elements(self) -> List[MagnusElem]:
        return [unflatten(self.params, r) for r in self.rows]

    def _check(self, other):
        if self.params != other.params:
            raise ParameterError("submodules over different parameters")

    def __eq__(self, other):
        return isinstance(other, SubmoduleBasis) and self.params == other.params and self.rows == other.rows

    def __hash__(self):
        return hash((self.params, self.rows))

    def __len__(self):
        return len(self.rows)

    def to_json(self) -> str:
        doc = {
            "p": self.params.p,
            "N0": self.params.N0,
            "M": self.params.M,
            "C": self.params.C,
            "order": "D0, then D(a,n) lexicographic, then ordered pairs row-major; N0 coordinates each",
            "ambient_rank": self.ambient_rank,
            "rows": [list(r) for r in self.rows],
        }
        return json.dumps(doc, sort_keys=True)

    def __repr__(self):
        return f"SubmoduleBasis(rank_rows={len(self.rows)}, log_order={self.log_order()})"


def _vp(x, p):
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def _wk_multiples(x: MagnusElem) -> List[List[int]]:
    """x times each power-basis element 1, xi, ..., xi^(N0-1) of W_M(k)."""
    out = []
    for j in range(x.params.N0):
        c = tuple(1 if i == j else 0 for i in range(x.params.N0))
        out.append(flatten(x.scale(c) if j else x))
    return out


def submodule_contains(b: SubmoduleBasis, x: MagnusElem) -> bool:
    if b.params != x.params:
        raise ParameterError("element and submodule over different parameters")
    if not x.in_augmentation():
        return False
    return b.contains_vector(flatten(x))


def _generator_elems(params: MagnusParams) -> List[MagnusElem]:
    return [MagnusElem.generator(params, g.a, g.n) for g in params.gens]


def ideal_generate(gens: Iterable[MagnusElem], sigma_closed: bool = True, params: MagnusParams = None) -> SubmoduleBasis:
    """Smallest two-sided ideal (W_M(k)-stable, optionally sigma-stable) containing gens.

    The candidates are closed under x -> xD, x -> Dx for every generator D,
    multiplication by the power basis of W_M(k) and, when asked, sigma.  The
    iteration stops at the first pass that adds nothing new.
    """
    gens = list(gens)
    if params is None:
        if not gens:
            raise ParameterError("need params for an empty generating set")
        params = gens[0].params
    for g in gens:
        if g.params != params:
            raise ParameterError("generators over different parameters")
        if not g.in_augmentation():
            raise ParameterError("ideal generators must lie in the augmentation ideal")
    basis = SubmoduleBasis.zero(params)
    frontier = gens
    D = _generator_elems(params)
    while frontier:
        cand = []
        for x in frontier:
            cand.extend(_wk_multiples(x))
            if sigma_closed:
                for k in range(1, params.N0):
                    cand.extend(_wk_multiples(magnus_sigma(x, k)))
        fresh = basis.missing(cand)
        if not fresh:
            break
        basis = SubmoduleBasis(params, list(basis.rows) + fresh)
        # multiply the new rows by generators; J^3 = 0 so only linear parts matter
        frontier = []
        for v in fresh:
            x = unflatten(params, v)
            if not x.linear:
                continue
            lin = x.mod_j2()
            for d in D:
                frontier.append(magnus_mul(lin, d))
                frontier.append(magnus_mul(d, lin))
    return basis
