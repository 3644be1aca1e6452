"""Ramification generators F_gamma, the ideals A(v) and the modules A_tr, A_adm.

Indices gamma are positive rationals with a p-power denominator.  Writing
e = v_p(gamma), a bracket term p^n1 a1 [D_(a1,n1), D_(a2,n2)] of F_gamma
has n2 = e, so for a single gamma every sum is finite and is enumerated
exactly.  Infinitely many gamma share the same bracket images (they only
depend on n2 mod N0); ``gamma_grid`` keeps a window of exponents that is
large enough for every ideal built here to be exact, see its docstring.

Elements are ``MagnusElem`` over W_M(k); the generators D_an with a > C
vanish in the truncation, so the renormalised generators Delta_an with
a > C survive only through their quadratic part.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from .errors import ParameterError
from .magnus import (
    D0,
    GenIndex,
    MagnusElem,
    MagnusParams,
    SubmoduleBasis,
    ideal_generate,
    magnus_mul,
    magnus_sigma,
)

Number = Union[int, Fraction, "Gamma"]


# ---------------------------------------------------------------------------
# gamma values


@functools.total_ordering
class Gamma:
    """gamma = mantissa / p^exponent with p not dividing the mantissa unless exponent = 0."""

    __slots__ = ("p", "mantissa", "exponent")

    def __init__(self, p: int, mantissa: int, exponent: int = 0):
        if mantissa < 0 or exponent < 0:
            raise ParameterError("gamma must be non-negative with exponent >= 0")
        while exponent > 0 and mantissa % p == 0:
            mantissa //= p
            exponent -= 1
        self.p = p
        self.mantissa = mantissa
        self.exponent = exponent

    @classmethod
    def of(cls, p: int, x: Number) -> "Gamma":
        if isinstance(x, Gamma):
            if x.p != p:
                raise ParameterError("gamma over a different prime")
            return x
        x = Fraction(x)
        den = x.denominator
        e = 0
        while den % p == 0:
            den //= p
            e += 1
        if den != 1:
            raise ParameterError(f"{x} does not have a {p}-power denominator")
        return cls(p, x.numerator, e)

    @property
    def value(self) -> Fraction:
        return Fraction(self.mantissa, self.p**self.exponent)

    def is_integer(self) -> bool:
        return self.exponent == 0

    def vp(self) -> int:
        """p-adic valuation (gamma > 0)."""
        if self.mantissa == 0:
            raise ParameterError("valuation of zero")
        if self.exponent:
            return -self.exponent
        n, k = self.mantissa, 0
        while n % self.p == 0:
            n //= self.p
            k += 1
        return k

    def split(self) -> Tuple[int, int]:
        """(a_gamma, v_gamma) with gamma = p^v_gamma a_gamma, for integer gamma."""
        if not self.is_integer() or self.mantissa == 0:
            raise ParameterError("only positive integers split as p^v a")
        v = self.vp()
        return self.mantissa // self.p**v, v

    def __eq__(self, other):
        if isinstance(other, Gamma):
            return self.value == other.value
        try:
            return self.value == Fraction(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        o = other.value if isinstance(other, Gamma) else Fraction(other)
        return self.value < o

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"Gamma({self.value})"

    def __str__(self):
        return str(self.value)


def _frac(x: Number) -> Fraction:
    return x.value if isinstance(x, Gamma) else Fraction(x)


def _vp_int(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _vp_frac(x: Fraction, p: int) -> int:
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


# ---------------------------------------------------------------------------
# index solutions


class TermIndexSolution(NamedTuple):
    """kind is 'linear' (a, v), 'square' (a1, a2, n) or 'bracket' (a1, n1, a2, n2)."""

    kind: str
    data: Tuple[int, ...]

    def value(self, p: int) -> Fraction:
        if self.kind == "linear":
            a, v = self.data
            return Fraction(p**v * a)
        if self.kind == "square":
            a1, a2, n = self.data
            return Fraction(p**n * (a1 + a2))
        a1, n1, a2, n2 = self.data
        return Fraction(a1) * Fraction(p) ** n1 + Fraction(a2) * Fraction(p) ** n2


_KIND_ORDER = {"linear": 0, "square": 1, "bracket": 2}


def enumerate_solutions(gamma: Number, p: int, C: int, M: int, n2_depth: Optional[int] = None, N0: Optional[int] = None):
    """All index tuples of the sums defining F_gamma, with a's <= C and n's <= M.

    ``n2_depth``, when given, keeps only brackets with n1 - n2 <= n2_depth;
    it must then be at least N0.  By default nothing is dropped (n2 is
    forced to equal v_p(gamma) anyway).
    """
    if n2_depth is not None and N0 is not None and n2_depth < N0:
        raise ParameterError("n2_depth must cover a full period N0")
    g = _frac(gamma)
    if g <= 0:
        return []
    out: List[TermIndexSolution] = []
    e = _vp_frac(g, p)
    if g.denominator == 1:
        n = g.numerator
        a_g = n // p**e
        if a_g <= C and e <= M:
            out.append(TermIndexSolution("linear", (a_g, e)))
        for k in range(0, min(e, M) + 1):
            tot = n // p**k
            for a1 in range(1, min(C, tot - 1) + 1):
                a2 = tot - a1
                if a1 % p and a2 % p and a2 <= C:
                    out.append(TermIndexSolution("square", (a1, a2, k)))
    # brackets: n2 = e, n1 in (e, M]
    for n1 in range(max(0, e + 1), M + 1):
        if n2_depth is not None and n1 - e > n2_depth:
            continue
        for a1 in range(1, C + 1):
            if a1 % p == 0:
                continue
            rest = g - Fraction(p**n1 * a1)
            if rest <= 0:
                break
            a2f = rest / Fraction(p) ** e
            if a2f.denominator != 1:
                continue
            a2 = a2f.numerator
            if a2 % p and a2 <= C:
                out.append(TermIndexSolution("bracket", (a1, n1, a2, e)))
    out.sort(key=lambda s: (_KIND_ORDER[s.kind], s.data))
    return out


# ---------------------------------------------------------------------------
# F_gamma and variants over D


def _coef(params: MagnusParams, n: int):
    return params.ring.from_int(n)


def _assemble(params: MagnusParams, sols: Iterable[TermIndexSolution], keep=None) -> MagnusElem:
    R = params.ring
    p, N0 = params.p, params.N0
    lin: Dict[GenIndex, tuple] = {}
    quad: Dict[Tuple[GenIndex, GenIndex], tuple] = {}

    def put(d, k, c):
        d[k] = R.add(d[k], c) if k in d else c

    for s in sols:
        if keep is not None and not keep(s):
            continue
        if s.kind == "linear":
            a, v = s.data
            put(lin, GenIndex(a, v % N0), _coef(params, p**v * a))
        elif s.kind == "square":
            a1, a2, n = s.data
            put(quad, (GenIndex(a1, n % N0), GenIndex(a2, n % N0)), _coef(params, -(p**n) * a1))
        else:
            a1, n1, a2, n2 = s.data
            c = p**n1 * a1
            g1, g2 = GenIndex(a1, n1 % N0), GenIndex(a2, n2 % N0)
            put(quad, (g1, g2), _coef(params, -c))
            put(quad, (g2, g1), _coef(params, c))
    return MagnusElem(params, R, None, lin, quad)


def build_F(gamma: Number, params: MagnusParams) -> MagnusElem:
    """F_gamma in the truncation (F_0 = D_0)."""
    g = _frac(gamma)
    if g < 0:
        raise ParameterError("gamma must be non-negative")
    if g == 0:
        return MagnusElem(params, params.ring, None, {D0: params.ring.one})
    return _assemble(params, enumerate_solutions(g, params.p, params.C, params.M))


def _degree2_small(p: int, bound: Fraction):
    def keep(s: TermIndexSolution) -> bool:
        if s.kind == "linear":
            return True
        if s.kind == "square":
            a1, a2, n = s.data
            return p**n * a1 < bound and p**n * a2 < bound
        a1, n1, a2, _ = s.data
        return p**n1 * a1 < bound and p**n1 * a2 < bound

    return keep


def build_F_tilde(gamma: Number, v0: Number, params: MagnusParams) -> MagnusElem:
    """F_gamma with degree-two terms kept only when p^n1 a1, p^n1 a2 < v0."""
    g, v = _frac(gamma), _frac(v0)
    if g < v:
        raise ParameterError("need gamma >= v0")
    if g == 0:
        return build_F(0, params)
    sols = enumerate_solutions(g, params.p, params.C, params.M)
    return _assemble(params, sols, _degree2_small(params.p, v))


# ---------------------------------------------------------------------------
# Delta generators and F_gamma(v)


@functools.lru_cache(maxsize=None)
def _delta0(params: MagnusParams, a: int) -> MagnusElem:
    R = params.ring
    inv = R.from_int(pow(a, -1, params.p**params.M))
    return build_F(a, params).scale(inv)


def build_delta(a: int, n: int, params: MagnusParams) -> MagnusElem:
    """Delta_an = sigma^n((1/a) F_a)."""
    if a <= 0 or a % params.p == 0:
        raise ParameterError(f"a={a} must be a positive integer prime to p")
    d = _delta0(params, a)
    n %= params.N0
    return magnus_sigma(d, n) if n else d


def delta_bound(params: MagnusParams) -> int:
    """Largest a for which Delta_a0 can be nonzero in the truncation."""
    p, C, M = params.p, params.C, params.M
    return max(C, 2 * C * p ** max(M - 1, 0))


class SymTerm(NamedTuple):
    """One term c * Delta_(a1,n1) [* Delta_(a2,n2)] of a symbolic expression."""

    coeff: int
    a1: int
    n1: int
    a2: int = 0
    n2: int = 0

    @property
    def is_linear(self) -> bool:
        return self.a2 == 0


def _restricted_squares(gamma: Fraction, v: Fraction, p: int, literal: bool):
    if gamma.denominator != 1:
        return
    n = gamma.numerator
    e = _vp_int(n, p)
    # Delta_(a, m) absorbs the squares with n = m (a1 + a2 prime to p)
    top = e if literal else e - 1
    for k in range(0, top + 1):
        tot = n // p**k
        for a1 in range(1, tot):
            a2 = tot - a1
            if a1 % p == 0 or a2 % p == 0:
                continue
            if p**k * a1 < v and p**k * a2 < v:
                yield a1, a2, k


def _restricted_brackets(gamma: Fraction, v: Fraction, p: int):
    if gamma.denominator == 1:
        return
    e = _vp_frac(gamma, p)
    n1 = 0
    while p**n1 < v:
        a1 = 1
        while p**n1 * a1 < v and p**n1 * a1 < gamma:
            if a1 % p:
                a2f = (gamma - p**n1 * a1) / Fraction(p) ** e
                if a2f.denominator == 1:
                    a2 = a2f.numerator
                    if a2 % p and p**n1 * a2 < v:
                        yield a1, n1, a2, e
            a1 += 1
        n1 += 1


def F_v_terms(gamma: Number, v: Number, p: int, literal: bool = False) -> List[SymTerm]:
    """F_gamma(v) as a combination of Delta monomials, indices not reduced.

    For integer gamma = p^m a the square terms run over n < m: those with
    n = m have a1 + a2 = a prime to p and are already part of
    p^m a Delta_(a,m).  ``literal=True`` keeps them, as an unreduced
    reading of the definition would.
    """
    g, vv = _frac(gamma), _frac(v)
    if g < vv:
        raise ParameterError("need gamma >= v")
    out: List[SymTerm] = []
    if g.denominator == 1:
        n = g.numerator
        m = _vp_int(n, p)
        out.append(SymTerm(n, n // p**m, m))
        for a1, a2, k in _restricted_squares(g, vv, p, literal):
            out.append(SymTerm(-(p**k) * a1, a1, k, a2, k))
    else:
        for a1, n1, a2, n2 in _restricted_brackets(g, vv, p):
            c = p**n1 * a1
            out.append(SymTerm(-c, a1, n1, a2, n2))
            out.append(SymTerm(c, a2, n2, a1, n1))
    return out


def build_F_v(gamma: Number, v: Number, params: MagnusParams, literal: bool = False) -> MagnusElem:
    """F_gamma(v) written with the Delta generators, in the truncation."""
    R = params.ring
    acc = MagnusElem.zero(params)
    for t in F_v_terms(gamma, v, params.p, literal):
        c = R.from_int(t.coeff)
        if t.is_linear:
            acc = acc + build_delta(t.a1, t.n1, params).scale(c)
        else:
            g1 = GenIndex(t.a1, t.n1 % params.N0)
            g2 = GenIndex(t.a2, t.n2 % params.N0)
            acc = acc + MagnusElem.monomial2(params, g1, g2, c)
    return acc


# ---------------------------------------------------------------------------
# the grid of gamma values and the ideals A(v)


def _exp_window(p: int, C: int, N0: int) -> int:
    K = 1
    while p**K <= C:
        K += 1
    return K + N0


def gamma_grid(params: MagnusParams, depth: Optional[int] = None) -> List[Fraction]:
    """All gamma > 0 whose F_gamma can be nonzero, with v_p(gamma) >= -depth.

    The default depth is K + N0 with p^K > C.  Below -K a bracket is the
    only term of its F_gamma, its image repeats with period N0 in n2, and
    gamma decreases with n2; so every deeper generator equals one already
    in the window whose gamma is at least as large.  The ideals A(v) built
    from the window are therefore exact for every v.
    """
    p, C, M = params.p, params.C, params.M
    if depth is None:
        depth = _exp_window(p, C, params.N0)
    avals = params.avals
    out = set()
    for a in avals:
        for m in range(M):
            out.add(Fraction(p**m * a))
    for a1 in avals:
        for a2 in avals:
            for n in range(M):
                out.add(Fraction(p**n * (a1 + a2)))
            for n1 in range(M):
                for n2 in range(-depth, n1):
                    out.add(Fraction(a1) * Fraction(p) ** n1 + Fraction(a2) * Fraction(p) ** n2)
    return sorted(g for g in out if not build_F(g, params).is_zero())


def realizable_gammas(params: MagnusParams, depth: Optional[int] = None) -> List[Fraction]:
    return gamma_grid(params, depth)


def build_ideal_Av(v: Number, params: MagnusParams, depth: Optional[int] = None) -> SubmoduleBasis:
    """The sigma-invariant ideal generated by F_gamma, gamma >= v, in the truncation."""
    vv = _frac(v)
    if vv < 0:
        raise ParameterError("v must be non-negative")
    gens = [build_F(g, params) for g in gamma_grid(params, depth) if g >= vv]
    if vv == 0:
        gens.append(build_F(0, params))
    return ideal_generate(gens, True, params=params)


def build_ideal_from_F_v(v: Number, params: MagnusParams, depth: Optional[int] = None, literal: bool = False):
    """The sigma-invariant ideal generated by F_gamma(v), gamma >= v."""
    vv = _frac(v)
    gens = [build_F_v(g, vv, params, literal) for g in gamma_grid(params, depth) if g >= vv]
    extra = [g for g in _delta_gammas(params) if g >= vv]
    gens += [build_F_v(g, vv, params, literal) for g in extra]
    if vv == 0:
        gens.append(build_F(0, params))
    return ideal_generate([x for x in gens if not x.is_zero()], True, params=params)


def _delta_gammas(params: MagnusParams) -> List[Fraction]:
    # integer gamma = p^m a with a beyond C: only their Delta part survives
    p = params.p
    out = []
    for a in range(1, delta_bound(params) + 1):
        if a % p:
            for m in range(params.M):
                out.append(Fraction(p**m * a))
    return out


def linear_span_expected(v: Number, params: MagnusParams) -> SubmoduleBasis:
    """span{p^s D_an : p^s a >= v} (plus D_0 when v = 0)."""
    vv = _frac(v)
    p = params.p
    R = params.ring
    elems = []
    for a in params.avals:
        for s in range(params.M):
            if p**s * a >= vv:
                for n in range(params.N0):
                    elems.append(MagnusElem.generator(params, a, n, R.from_int(p**s)))
                break
    if vv == 0:
        elems.append(MagnusElem.generator(params, 0, 0))
    return SubmoduleBasis.span(params, elems)


def linear_part(b: SubmoduleBasis) -> SubmoduleBasis:
    """Image of a submodule under x -> x mod J^2."""
    return SubmoduleBasis.span(b.params, [x.mod_j2() for x in b.elements()], wk=False)


# ---------------------------------------------------------------------------
# A_tr and A_adm


def _n_diff(n1: int, n2: int, N0: int) -> int:
    return (n1 - n2) % N0


def adm2_conditions(v: Fraction, s: int, a1: int, n1: int, a2: int, n2: int, p: int, N0: int) -> bool:
    big = max(p**s * a1, p**s * a2)
    if not (v / p <= big < v):
        return False
    n12 = _n_diff(n1, n2, N0)
    n21 = _n_diff(n2, n1, N0)
    ps = Fraction(p) ** s
    c2 = max(ps * (a1 + Fraction(a2, p**n12)), ps * (Fraction(a1, p**n21) + a2))
    if c2 < v:
        return False
    if n1 % N0 == n2 % N0 and (a1 + a2) % p:
        return False
    return True


@dataclass(frozen=True)
class ListedElement:
    """p^s Delta_(a1,n1) or p^s Delta_(a1,n1) Delta_(a2,n2); a2 = 0 stands for D_0."""

    kind: str  # tr1, tr2, adm1, adm2
    s: int
    a1: int
    n1: int
    a2: Optional[int] = None
    n2: Optional[int] = None

    def visible(self, params: MagnusParams) -> bool:
        """Whether the element is a p-power multiple of a basis vector of the truncation."""
        if self.s >= params.M or self.a1 > params.C:
            return False
        return self.a2 is None or self.a2 <= params.C

    def elem(self, params: MagnusParams) -> MagnusElem:
        R = params.ring
        c = R.from_int(params.p**self.s)
        if self.a2 is None:
            return build_delta(self.a1, self.n1, params).scale(c)
        g1 = params.gen_index(self.a1, self.n1)
        g2 = params.gen_index(self.a2, self.n2)
        return MagnusElem.monomial2(params, g1, g2, c)


def _linear_list(v: Fraction, params: MagnusParams, lo: Fraction, hi, kind: str) -> List[ListedElement]:
    p = params.p
    out = []
    for a in range(1, delta_bound(params) + 1):
        if a % p == 0:
            continue
        for s in range(params.M):
            if lo <= p**s * a and (hi is None or p**s * a < hi):
                out.extend(ListedElement(kind, s, a, n) for n in range(params.N0))
    return out


def list_tr(v: Number, params: MagnusParams) -> List[ListedElement]:
    """tr1 and tr2 elements; tr2 also carries the products with D_0 (weight 0)."""
    vv = _frac(v)
    p, N0 = params.p, params.N0
    out = _linear_list(vv, params, 2 * vv, None, "tr1")
    idx = [(a, n) for a in params.avals for n in range(N0)]
    for s in range(params.M):
        for a1, n1 in idx:
            for a2, n2 in idx:
                if max(p**s * a1, p**s * a2) >= vv:
                    out.append(ListedElement("tr2", s, a1, n1, a2, n2))
            if p**s * a1 >= vv:
                out.append(ListedElement("tr2", s, a1, n1, 0, 0))
                out.append(ListedElement("tr2", s, 0, 0, a1, n1))
    return out


def list_adm(v: Number, params: MagnusParams) -> List[ListedElement]:
    """adm1 and adm2 elements that are not already tr elements.

    adm1 elements with p^s a >= 2v are tr1 elements and vanish modulo A_tr,
    so only v <= p^s a < 2v is listed.
    """
    vv = _frac(v)
    p, N0 = params.p, params.N0
    out = _linear_list(vv, params, vv, 2 * vv, "adm1")
    idx = [(a, n) for a in params.avals for n in range(N0)]
    for s in range(params.M):
        for a1, n1 in idx:
            for a2, n2 in idx:
                if adm2_conditions(vv, s, a1, n1, a2, n2, p, N0):
                    out.append(ListedElement("adm2", s, a1, n1, a2, n2))
    return out


def _span(params, listed):
    return SubmoduleBasis.span(params, [x.elem(params) for x in listed])


def build_Atr(v: Number, params: MagnusParams) -> SubmoduleBasis:
    if _frac(v) <= 0:
        raise ParameterError("v must be positive")
    return _span(params, list_tr(v, params))


def build_Aadm(v: Number, params: MagnusParams) -> SubmoduleBasis:
    if _frac(v) <= 0:
        raise ParameterError("v must be positive")
    return _span(params, list_tr(v, params) + list_adm(v, params))


@dataclass
class ChainReport:
    v: Fraction
    adm_contains_ideal: bool
    ideal_contains_tr: bool
    tr_contains_p_adm: bool
    quotient_dim: int  # F_p-dimension of A_adm / A_tr
    visible_adm: int  # N0 times the number of visible adm elements
    visible_span_ok: bool  # A_adm = A_tr + W(k)-span of visible adm elements
    visible_independent: bool  # visible adm elements are k-independent mod A_tr
    complete: bool  # every listed adm element is visible in the truncation
    missing: List[Tuple] = field(default_factory=list)

    @property
    def chain_ok(self) -> bool:
        return self.adm_contains_ideal and self.ideal_contains_tr and self.tr_contains_p_adm

    @property
    def basis_ok(self) -> bool:
        """k-basis statement as far as the truncation can see it.

        An adm element with a > C (or s >= M) is not a multiple of a basis
        vector of the truncated algebra: its image is either zero or a purely
        quadratic element.  So independence is tested on the visible elements,
        and spanning only when all of them are visible.
        """
        if not self.visible_independent:
            return False
        return not self.complete or (self.visible_span_ok and self.quotient_dim == self.visible_adm)


def check_chain(v: Number, params: MagnusParams, ideal: Optional[SubmoduleBasis] = None) -> ChainReport:
    """The containments A_adm > A(v) > A_tr > p A_adm and the k-basis count."""
    vv = _frac(v)
    if ideal is None:
        ideal = build_ideal_Av(vv, params)
    tr_list = list_tr(vv, params)
    adm_list = list_adm(vv, params)
    tr = _span(params, tr_list)
    adm = _span(params, tr_list + adm_list)
    missing = []
    for row in ideal.rows:
        if not adm.contains_vector(row):
            missing.append(tuple(row))
    vis = [x for x in adm_list if x.visible(params)]
    span_vis = tr + _span(params, vis)
    return ChainReport(
        v=vv,
        adm_contains_ideal=not missing,
        ideal_contains_tr=ideal.includes(tr),
        tr_contains_p_adm=tr.includes(adm.scaled(params.p)),
        quotient_dim=adm.log_order() - tr.log_order(),
        visible_adm=len(vis) * params.N0,
        visible_span_ok=span_vis == adm,
        visible_independent=span_vis.log_order() - tr.log_order() == len(vis) * params.N0,
        complete=len(vis) == len(adm_list),
        missing=missing,
    )


# ---------------------------------------------------------------------------
# uniqueness of occurrences


def d_of(v: Fraction) -> Fraction:
    """min{v - a : a integer, a < v}."""
    v = Fraction(v)
    fl = v.numerator // v.denominator
    a = fl - 1 if fl == v else fl
    return v - a


@dataclass
class UniquenessReport:
    term: Tuple[int, int, int, int, int]
    hypothesis: bool
    count: int
    occurrences: List[Tuple[int, Fraction]]


def _quadratic_terms_at(v: Fraction, p: int, s: int, literal: bool = False, pair=None):
    """Quadratic terms of all F_gamma(v), gamma >= v, with p-power p^s; yields (gamma, SymTerm).

    ``pair`` restricts to one unordered pair {a1, a2} of indices.
    """
    lim = v / p**s
    a_max = int(lim) + 1
    if pair is None:
        cands = [(a1, a2) for a1 in range(1, a_max + 1) for a2 in range(1, a_max + 1)]
    else:
        x, y = pair
        cands = sorted({(x, y), (y, x)})
    cands = [(a1, a2) for a1, a2 in cands if a1 % p and a2 % p and p**s * a1 < v and p**s * a2 < v]
    # squares p^s(a1 + a2) = gamma with p^s a_i < v
    for a1, a2 in cands:
        g = Fraction(p**s * (a1 + a2))
        if g < v:
            continue
        if not literal and (a1 + a2) % p:
            continue
        yield g, SymTerm(-(p**s) * a1, a1, s, a2, s)
    # brackets p^s a1 + p^n2 a2 = gamma, n2 < 0
    for a1, a2 in cands:
        n2 = -1
        while True:
            g = Fraction(p**s * a1) + Fraction(a2, p ** (-n2))
            if g < v:
                break
            c = p**s * a1
            yield g, SymTerm(-c, a1, s, a2, n2)
            yield g, SymTerm(c, a2, n2, a1, s)
            n2 -= 1
    # brackets with 0 <= n2 < n1 = s only enter integer gamma through Delta


def uniqueness_scan(v: Number, term: Sequence[int], p: int, N0: int, literal: bool = False) -> UniquenessReport:
    """Count the (m, gamma >= v) for which p^s a1 Delta_(a1,n1) Delta_(a2,n2) occurs in sigma^m F_gamma(v).

    ``term`` is (s, a1, n1, a2, n2) and must be an adm2 element.  The scan
    is exact: every candidate gamma is bounded because the restriction
    p^s a_i < v bounds the a's and gamma >= v bounds n2 from below.
    """
    vv = _frac(v)
    s, a1, n1, a2, n2 = term
    n1 %= N0
    n2 %= N0
    if not adm2_conditions(vv, s, a1, n1, a2, n2, p, N0):
        raise ParameterError(f"{tuple(term)} is not an adm2 element for v={vv}")
    n = min(_n_diff(n1, n2, N0), _n_diff(n2, n1, N0))
    hyp = vv / p ** (N0 - n) <= d_of(vv)
    acc: Dict[Tuple[int, Fraction], int] = {}
    for g, t in _quadratic_terms_at(vv, p, s, literal, (a1, a2)):
        if (t.a1, t.a2) != (a1, a2):
            continue
        m = (n1 - t.n1) % N0
        if (t.n2 + m) % N0 != n2:
            continue
        key = (m, g)
        acc[key] = acc.get(key, 0) + t.coeff
    occ = sorted(k for k, c in acc.items() if c != 0)
    return UniquenessReport(tuple(term), hyp, len(occ), occ)


def adm2_terms(v: Number, p: int, N0: int, n1: Optional[int] = None, n2: Optional[int] = None):
    """All adm2 tuples (s, a1, n1, a2, n2) for v (a's unbounded except by the conditions)."""
    vv = _frac(v)
    out = []
    s = 0
    while Fraction(p**s) < vv:
        lim = vv / p**s
        amax = int(lim) + 1
        for a1 in range(1, amax + 1):
            if a1 % p == 0:
                continue
            for a2 in range(1, amax + 1):
                if a2 % p == 0:
                    continue
                for m1 in range(N0) if n1 is None else [n1 % N0]:
                    for m2 in range(N0) if n2 is None else [n2 % N0]:
                        if adm2_conditions(vv, s, a1, m1, a2, m2, p, N0):
                            out.append((s, a1, m1, a2, m2))
        s += 1
    return out


# ---------------------------------------------------------------------------
# Lemmas on the reduction of the right-hand side


@dataclass
class LemmaReport:
    params: Tuple
    checked: Dict[str, int]
    violations: List[Tuple]

    @property
    def ok(self) -> bool:
        return not self.violations


def _product_ideal(I: SubmoduleBasis) -> SubmoduleBasis:
    """The two-sided product I*J + J*I (a W(k)-module)."""
    params = I.params
    gens = [MagnusElem.generator(params, g.a, g.n) for g in params.gens]
    prods = []
    for x in I.elements():
        lin = x.mod_j2()
        if not lin.linear:
            continue
        for d in gens:
            prods.append(magnus_mul(lin, d))
            prods.append(magnus_mul(d, lin))
    return SubmoduleBasis.span(params, prods)


def check_reduction_lemmas(
    p: int,
    N0: int,
    C: int,
    M: int,
    v0: Number,
    N_star: int,
    m_star: int,
    modulus: Tuple[int, ...] = (),
) -> LemmaReport:
    """Replay the four membership lemmas on every index tuple in range.

    The algebra has Witt length M + 1.  A term lands in J tensor m_1 when
    its t_1-exponent is at least 1; otherwise its coefficient part must lie
    in the stated submodule.  The parameters must satisfy the three
    inequalities of the parameter search (checked first).
    """
    from .herbrand import check_conditions

    v = _frac(v0)
    q = p**N_star
    ok, why = check_conditions(p, N0, C, M, v, N_star, m_star)
    if not ok:
        raise ParameterError(f"parameters rejected: {why}")
    r_num = m_star  # r*(q-1)
    params = MagnusParams(p, N0, M + 1, C, modulus)
    depth = max(_exp_window(p, C, N0), N_star - M + N0 + 1)
    Bv0 = build_ideal_Av(v, params, depth)
    BvJ = _product_ideal(Bv0)
    higher = [g for g in gamma_grid(params, depth) if g > v]
    Bplus = ideal_generate([build_F(g, params) for g in higher], True, params=params) + BvJ
    R = params.ring
    viol: List[Tuple] = []
    checked = {"squares": 0, "brackets": 0, "linear": 0, "deep_brackets": 0}
    a0 = [0] + list(params.avals)

    def gen(a, n):
        return params.gen_index(a, n)

    # squares p^s t1^E D_(a1,s) D_(a2,s)
    for s in range(M + 1):
        for a1 in a0:
            for a2 in a0:
                checked["squares"] += 1
                E = -(a1 + a2) * p**s * q + 2 * r_num
                if E >= 1:
                    continue
                x = MagnusElem.monomial2(params, gen(a1, s), gen(a2, s), R.from_int(p**s))
                if not BvJ.contains(x):
                    viol.append(("squares", s, a1, a2, E))
    # brackets p^s1 t1^E [D_(a1,s1), D_(a2,s2)], M - N* < s2 < s1
    for s1 in range(M + 1):
        for s2 in range(M - N_star + 1, s1):
            for a1 in a0:
                for a2 in a0:
                    checked["brackets"] += 1
                    E = -(p**s1 * a1 * q + a2 * p ** (s2 + N_star)) + 2 * r_num
                    if E >= 1:
                        continue
                    d1 = MagnusElem.generator(params, a1, s1) if a1 else MagnusElem.generator(params, 0)
                    d2 = MagnusElem.generator(params, a2, s2) if a2 else MagnusElem.generator(params, 0)
                    x = d1.bracket(d2).scale_int(p**s1)
                    if not BvJ.contains(x):
                        viol.append(("brackets", s1, s2, a1, a2, E))
    # linear p^s t1^E D_(a,s)
    for s in range(M + 1):
        for a in a0:
            checked["linear"] += 1
            E = -a * p**s * q + 2 * r_num
            if E >= 1:
                continue
            x = MagnusElem.generator(params, a, s, R.from_int(p**s)) if a else MagnusElem.generator(params, 0)
            if not Bplus.contains(x):
                viol.append(("linear", s, a, E))
    # F'_gamma = F_gamma without brackets having n2 <= M - N*
    for g in gamma_grid(params, depth):
        if g < v:
            continue
        checked["deep_brackets"] += 1
        sols = enumerate_solutions(g, p, C, M + 1)
        dropped = [t for t in sols if t.kind == "bracket" and t.data[3] <= M - N_star]
        if not dropped:
            continue
        diff = _assemble(params, dropped)
        small = [t for t in dropped if p ** t.data[1] * t.data[0] < v]
        if small or not BvJ.contains(diff):
            viol.append(("deep_brackets", g, tuple(t.data for t in dropped)))
    return LemmaReport((p, N0, C, M, v, N_star, m_star), checked, viol)
