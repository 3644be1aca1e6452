"""Action of field automorphisms on M_k in the D_an basis.

A ``CoeffTable`` stores alpha_abm(f), defined by f(D_a0) = sum alpha_abm(f) D_bm.
Composition follows the left-to-right convention: ``fg`` applies f first,
then g, and alpha_ab0(fg) = sum_c alpha_ac0(f) alpha_cb0(g) on the range
a <= b < a p^N0.

An automorphism eta in Aut^0 K is stored as the series eta(t) (``AutSeries``).
For the composite of series, ``eta1.then(eta2)`` is the automorphism with
(eta1 eta2)^* = eta1^* eta2^*; as a series it is eta1(t) with t replaced by
eta2(t).
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterator, List, Optional, Tuple

from .errors import HypothesisFailure, ParameterError, PrecisionError, UnknownEntry
from .fields import FiniteField
from .series import LaurentSeries, artin_schreier_reduce, series_reversion, series_substitute
from .witt import dual_basis, power_basis

Key = Tuple[int, int, int]


def _split_p(c: int, p: int) -> Tuple[int, int]:
    s = 0
    while c % p == 0:
        c //= p
        s += 1
    return c, s


# ---------------------------------------------------------------------------
# automorphisms of K = k((t))


@dataclass(frozen=True)
class AutSeries:
    """eta in Aut^0 K given by eta(t), known modulo t^prec."""

    field: FiniteField
    eta: LaurentSeries

    def __post_init__(self):
        s = self.eta
        if s.ring is not self.field:
            raise ParameterError("series lives over a different field")
        if s.prec is None or s.prec < 2:
            raise PrecisionError("eta(t) needs precision at least 2", required=2)
        if s.valuation() != 1:
            raise ParameterError("eta(t) must have valuation 1")

    @property
    def prec(self) -> int:
        return self.eta.prec

    @classmethod
    def identity(cls, field: FiniteField, prec: int) -> "AutSeries":
        return cls(field, LaurentSeries.gen(field, prec))

    @classmethod
    def scalar(cls, field: FiniteField, c: int, prec: int) -> "AutSeries":
        """eta(t) = c t."""
        if c == 0:
            raise ParameterError("scalar must be nonzero")
        return cls(field, LaurentSeries.monomial(field, 1, c, prec))

    @classmethod
    def from_coeffs(cls, field: FiniteField, coeffs, prec: int) -> "AutSeries":
        """eta(t) = coeffs[0] t + coeffs[1] t^2 + ..."""
        return cls(field, LaurentSeries(field, {i + 1: c for i, c in enumerate(coeffs)}, prec))

    @classmethod
    def from_inverse(cls, h: LaurentSeries, prec: int) -> "AutSeries":
        """The automorphism whose inverse sends t to h(t)."""
        return cls(h.ring, series_reversion(h.with_prec(prec) if h.prec is None else h, prec))

    @classmethod
    def random(cls, field: FiniteField, prec: int, rng: _random.Random, lead: Optional[int] = None) -> "AutSeries":
        c1 = field.random(rng, nonzero=True) if lead is None else lead
        coeffs = [c1] + [field.random(rng) for _ in range(prec - 2)]
        return cls.from_coeffs(field, coeffs, prec)

    def inverse_series(self, prec: Optional[int] = None) -> LaurentSeries:
        """eta^{-1}(t)."""
        return series_reversion(self.eta, prec)

    def inverse(self) -> "AutSeries":
        return AutSeries(self.field, self.inverse_series())

    def then(self, other: "AutSeries") -> "AutSeries":
        """The automorphism with (self other)^* = self^* other^*."""
        return AutSeries(self.field, series_substitute(self.eta, other.eta))

    def truncate(self, prec: int) -> "AutSeries":
        return AutSeries(self.field, self.eta.with_prec(min(prec, self.prec)))

    def first_difference(self, other: "AutSeries") -> Optional[int]:
        """Least n with differing t^n coefficients, None if equal to common precision."""
        cap = min(self.prec, other.prec)
        for n in range(1, cap):
            if self.eta[n] != other.eta[n]:
                return n
        return None

    def coefficients(self) -> List[int]:
        return [self.eta[n] for n in range(1, self.prec)]


# ---------------------------------------------------------------------------
# coefficient tables


@dataclass
class CoeffTable:
    """alpha_abm for a <= a_max, b <= b_max, m modulo N (the degree of the field).

    ``window`` is "full" when every entry in the bounds is known and
    "analytic" when only m = 0 entries with b < a p^N are (compositions).
    """

    field: FiniteField
    a_max: int
    b_max: int
    entries: Dict[Key, int] = dc_field(default_factory=dict)
    provenance: str = "abstract"
    source: Optional[AutSeries] = None
    window: str = "full"

    def __post_init__(self):
        p, N = self.field.p, self.field.N0
        clean = {}
        for (a, b, m), c in self.entries.items():
            if c == 0:
                continue
            if a % p == 0 or b % p == 0:
                raise ParameterError(f"index divisible by p: {(a, b, m)}")
            if not (1 <= a <= self.a_max and 1 <= b <= self.b_max):
                raise ParameterError(f"entry {(a, b, m)} outside the declared bounds")
            clean[(a, b, m % N)] = c
        self.entries = clean

    @property
    def N(self) -> int:
        return self.field.N0

    @property
    def p(self) -> int:
        return self.field.p

    @classmethod
    def identity(cls, field: FiniteField, a_max: int, b_max: int) -> "CoeffTable":
        p = field.p
        ent = {(a, a, 0): 1 for a in range(1, min(a_max, b_max) + 1) if a % p}
        return cls(field, a_max, b_max, ent, "identity")

    def known(self, a: int, b: int, m: int = 0) -> bool:
        if not (1 <= a <= self.a_max and 1 <= b <= self.b_max):
            return False
        if self.window == "analytic":
            return m % self.N == 0 and b < a * self.p**self.N
        return True

    def get(self, a: int, b: int, m: int = 0) -> int:
        p = self.p
        if a % p == 0 or b % p == 0:
            return 0
        if not self.known(a, b, m):
            raise UnknownEntry((a, b, m))
        return self.entries.get((a, b, m % self.N), 0)

    def items(self) -> Iterator[Tuple[Key, int]]:
        return iter(sorted(self.entries.items()))

    def rows(self) -> List[int]:
        return [a for a in range(1, self.a_max + 1) if a % self.p]

    def cols(self) -> List[int]:
        return [b for b in range(1, self.b_max + 1) if b % self.p]

    def records(self) -> List[dict]:
        F = self.field
        return [{"a": a, "b": b, "m": m, "alpha": list(F.coords(c))} for (a, b, m), c in self.items()]

    def __eq__(self, other):
        if not isinstance(other, CoeffTable):
            return NotImplemented
        return (
            self.field is other.field
            and (self.a_max, self.b_max, self.window) == (other.a_max, other.b_max, other.window)
            and self.entries == other.entries
        )


# ---------------------------------------------------------------------------
# alpha_abm(eta^*), two ways


def _inverse_powers(eta: AutSeries, b_max: int):
    """u^{-b} for b <= b_max, where eta^{-1}(t) = t u(t), each modulo t^(b_max + 1)."""
    need = b_max + 2
    if eta.prec < need:
        raise PrecisionError(f"eta known to t^{eta.prec}; need t^{need} for b <= {b_max}", required=need)
    h = eta.inverse_series(need)
    u = h.shift(-1)
    uinv = u.inverse(b_max + 1)
    out = [None]
    acc = LaurentSeries.one(eta.field, b_max + 1)
    for _ in range(b_max):
        acc = (acc * uinv).with_prec(b_max + 1)
        out.append(acc)
    return out


def induced_alpha(eta: AutSeries, a_max: int, b_max: int) -> CoeffTable:
    """alpha_abm(eta^*) from the principal part of eta^{-1}(t)^{-b}.

    Writing eta^{-1}(t)^{-b} = sum gamma_bas t^{-a p^s} + O(1), the entry
    alpha_{a, b, -s mod N} collects sigma^{-s}(gamma_bas).
    """
    F = eta.field
    p, N = F.p, F.N0
    pows = _inverse_powers(eta, b_max)
    ent: Dict[Key, int] = {}
    for b in range(1, b_max + 1):
        if b % p == 0:
            continue
        ub = pows[b]
        for j in range(b):
            c = ub[j]
            if c == 0:
                continue
            a, s = _split_p(b - j, p)
            if a > a_max:
                continue
            key = (a, b, (-s) % N)
            ent[key] = F.add(ent.get(key, 0), F.frob(c, -s))
    return CoeffTable(F, a_max, b_max, ent, "induced", eta)


def _trace_duals(F: FiniteField):
    betas = [w.comps[0] for w in power_basis(F, 1)]
    alphas = [w.comps[0] for w in dual_basis(power_basis(F, 1))]
    return alphas, betas


def _fp_trace(F: FiniteField, x: int) -> int:
    return F.to_int(F.abs_trace(x))


def induced_alpha_as(eta: AutSeries, a_max: int, b_max: int) -> CoeffTable:
    """alpha_abm(eta^*) through Artin-Schreier reduction over F_p.

    In the F_p-basis D_b^(r) = sum_n sigma^n(beta_r) D_bn the congruence
    sum_a t^{-a} eta^*(D_a0) = sum_b eta^{-1}(t)^{-b} D_b0 (mod k + (sigma - 1)K)
    separates into one Artin-Schreier reduction per (b, r'), whose t^{-a}
    coefficient x satisfies Tr(x beta_r) = [eta^*(D_a^(r)) : D_b^(r')].
    """
    F = eta.field
    p, N = F.p, F.N0
    alphas, betas = _trace_duals(F)
    pows = _inverse_powers(eta, b_max)
    rows = [a for a in range(1, a_max + 1) if a % p]
    # c[a][b][(r, r')] in F_p
    ent: Dict[Key, int] = {}
    for b in range(1, b_max + 1):
        if b % p == 0:
            continue
        ub = pows[b]
        base = LaurentSeries(F, {j - b: ub[j] for j in range(b + 1)}, 1)
        for rp in range(N):
            red = artin_schreier_reduce(base.scale(alphas[rp]), 1)
            for a in rows:
                x = red[-a]
                if x == 0:
                    continue
                for r in range(N):
                    c = _fp_trace(F, F.mul(x, betas[r]))
                    if c == 0:
                        continue
                    coef = F.scal(c, alphas[r])
                    for n in range(N):
                        key = (a, b, n)
                        ent[key] = F.add(ent.get(key, 0), F.mul(coef, F.frob(betas[rp], n)))
    return CoeffTable(F, a_max, b_max, ent, "induced (Artin-Schreier)", eta)


# ---------------------------------------------------------------------------
# operations on tables


def fr_shift(table: CoeffTable, n: int) -> CoeffTable:
    """Table of Fr(t)^{*n} followed by f: D_a0 -> f(D_{a,-n}).

    Entries move from (a, b, m) to (a, b, m - n) and are twisted by sigma^{-n}.
    """
    F = table.field
    ent = {(a, b, (m - n) % table.N): F.frob(c, -n) for (a, b, m), c in table.entries.items()}
    return CoeffTable(F, table.a_max, table.b_max, ent, f"Fr^{n} then {table.provenance}", None, table.window)


def frobenius_table(field: FiniteField, n: int, a_max: int, b_max: int) -> CoeffTable:
    """Fr(t)^{*n}: D_a0 -> D_{a,-n}."""
    return fr_shift(CoeffTable.identity(field, a_max, b_max), n)


def is_admissible(table: CoeffTable) -> bool:
    """alpha_{a,b,m mod N} = 0 whenever b p^m < a, -N < m <= 0, plus the diagonal property."""
    p, N = table.p, table.N
    for (a, b, n), c in table.entries.items():
        m = 0 if n == 0 else n - N
        if b * p**m < a:
            return False
    for a in table.rows():
        if a > table.b_max:
            break
        if not table.known(a, a, 0):
            continue
        if table.entries.get((a, a, 0), 0) == 0:
            return False
        if table.window == "full" and any(table.entries.get((a, a, n), 0) for n in range(1, N)):
            return False
    return True


def compose_tables(f: CoeffTable, g: CoeffTable) -> CoeffTable:
    """alpha_ab0(fg) = sum_c alpha_ac0(f) alpha_cb0(g) for a <= b < a p^N.

    Only m = 0 entries inside that range are produced; everything else is
    unknown in the result (``window == "analytic"``).
    """
    if f.field is not g.field:
        raise ParameterError("tables over different fields")
    if not is_admissible(f) or not is_admissible(g):
        raise ParameterError("composition needs admissible tables")
    F = f.field
    p, N = F.p, F.N0
    a_max = f.a_max
    b_max = min(f.b_max, g.b_max, g.a_max)
    ent = {}
    for a in f.rows():
        for b in range(a, min(b_max, a * p**N - 1) + 1):
            if b % p == 0:
                continue
            acc = 0
            for c in range(a, b + 1):
                if c % p == 0:
                    continue
                x = f.entries.get((a, c, 0), 0)
                if x == 0:
                    continue
                y = g.entries.get((c, b, 0), 0)
                if y:
                    acc = F.add(acc, F.mul(x, y))
            if acc:
                ent[(a, b, 0)] = acc
    src = None
    if f.source is not None and g.source is not None:
        src = f.source.then(g.source)
    return CoeffTable(F, a_max, b_max, ent, "composed", src, "analytic")


def analytic_part(f: CoeffTable) -> CoeffTable:
    """f_an: keep the m = 0 layer."""
    ent = {k: c for k, c in f.entries.items() if k[2] == 0}
    return CoeffTable(f.field, f.a_max, f.b_max, ent, f"analytic part of {f.provenance}", None, f.window)


def agree_below(f: CoeffTable, g: CoeffTable, v: int) -> bool:
    """f_an = g_an modulo M^(v): alpha_ab0 equal for b < v on the common known range."""
    p = f.p
    for a in f.rows():
        if a > g.a_max:
            break
        for b in range(1, min(v, f.b_max + 1, g.b_max + 1)):
            if b % p == 0:
                continue
            if f.known(a, b, 0) and g.known(a, b, 0) and f.get(a, b, 0) != g.get(a, b, 0):
                return False
    return True


# ---------------------------------------------------------------------------
# one normalisation step


def _inverse_binomial(field: FiniteField, w: int, gamma: int, prec: int) -> AutSeries:
    """eta with eta^{-1}(t) = t (1 + gamma t^w)."""
    h = LaurentSeries(field, {1: 1, w + 1: gamma}, prec)
    return AutSeries.from_inverse(h, prec)


def _check_delta(f: CoeffTable, a: int, bs, what: str):
    for b in bs:
        if b % f.p:
            want = 1 if a == b else 0
            got = f.get(a, b, 0)
            if got != want:
                raise HypothesisFailure(f"{what}: alpha_({a},{b},0) = {got}, expected {want}", (a, b, 0))


def _sqrt(field: FiniteField, x: int) -> int:
    # Frobenius is bijective on F_q, so x^(1/2) = x^(q/2) when p = 2
    return field.frob(x, -1)


def normalize_step(f: CoeffTable, w0: int) -> AutSeries:
    """The eta raising the normalised window of f by one level.

    p != 2 (hypothesis: alpha_1a0 = delta_1a for a < w0 and alpha_2a0 = 0 for
    a = 1 mod p, a <= w0): eta^{-1}(t) = t(1 + gamma t^(w0-1)).
    p = 2 (w0 = 4M; alpha_1a0 = delta for a <= w0-3 and alpha_3a0 = delta for
    a <= w0-1): the product of three such substitutions.
    The returned eta satisfies the conclusion for f eta^*.
    """
    F = f.field
    p, N = F.p, F.N0
    prec = f.b_max + 2
    if p != 2:
        if not (1 <= w0 and w0 + 1 <= p**N):
            raise ParameterError("need 1 <= w0 and w0 + 1 <= p^N0")
        if f.b_max < w0 + 1 or f.a_max < 2:
            raise ParameterError("table too small for this step")
        _check_delta(f, 1, range(1, w0), "alpha_1a0 hypothesis")
        for a in range(1, w0 + 1):
            if a % p == 1 and a % p:
                if f.get(2, a, 0) != 0:
                    raise HypothesisFailure(f"alpha_(2,{a},0) must vanish", (2, a, 0))
        if w0 % p:
            gamma = F.div(f.get(1, w0, 0), F.from_int(w0))
        else:
            gamma = F.div(f.get(2, w0 + 1, 0), f.get(2, 2, 0))
        if w0 == 1:
            # eta^{-1}(t) = t(1 + gamma): a pure scaling
            return AutSeries.from_inverse(LaurentSeries(F, {1: F.add(1, gamma)}, prec), prec)
        return _inverse_binomial(F, w0 - 1, gamma, prec)
    # p = 2
    if w0 % 4 or w0 < 4 or not w0 + 1 < 2**N:
        raise ParameterError("p = 2 needs w0 = 4M with w0 + 1 < 2^N0")
    if f.b_max < w0 + 1 or f.a_max < 3:
        raise ParameterError("table too small for this step")
    M = w0 // 4
    _check_delta(f, 1, range(1, w0 - 2), "alpha_1a0 hypothesis")
    _check_delta(f, 3, range(3, w0), "alpha_3a0 hypothesis")
    ident = AutSeries.identity(F, prec)
    eta = ident
    cur = f
    g1 = cur.get(1, w0 - 1, 0)
    if g1:
        e1 = _inverse_binomial(F, 4 * M - 2, g1, prec)
        eta = eta.then(e1)
        cur = compose_tables(f, induced_alpha(eta, f.b_max, f.b_max))
    g2sq = cur.get(3, w0 + 1, 0)
    if g2sq:
        e2 = _inverse_binomial(F, 2 * M - 1, _sqrt(F, g2sq), prec)
        eta = eta.then(e2)
        cur = compose_tables(f, induced_alpha(eta, f.b_max, f.b_max))
    g3 = cur.get(1, w0 + 1, 0)
    if g3:
        e3 = _inverse_binomial(F, 4 * M, g3, prec)
        eta = eta.then(e3)
    return eta


def step_progress_ok(f: CoeffTable, w0: int, eta: AutSeries) -> bool:
    """Conclusion of the step for f eta^*."""
    g = compose_tables(f, induced_alpha(eta, f.b_max, f.b_max))
    p = f.p
    try:
        if p != 2:
            _check_delta(g, 1, range(1, w0 + 1), "")
            for a in range(1, w0 + 2):
                if a % p == 1 and g.get(2, a, 0) != 0:
                    return False
        else:
            _check_delta(g, 1, range(1, w0 + 2), "")
            _check_delta(g, 3, range(3, w0 + 2), "")
    except HypothesisFailure:
        return False
    return True


# ---------------------------------------------------------------------------
# reconstruction of eta from the analytic part


@dataclass
class Reconstruction:
    """eta(t) recovered from alpha_cb0, a <= c <= b < w0, modulo t^attained."""

    v0: int
    attained: int
    eta: Optional[AutSeries]
    consistent: bool
    first_difference: Optional[int] = None  # against the table's source, if any
    note: str = ""

    @property
    def certified(self) -> bool:
        if not self.consistent or self.attained < self.v0:
            return False
        return self.first_difference is None or self.first_difference >= self.v0


def _check_window(p: int, N: int, a: int, w0: int) -> int:
    if a % p == 0 or a < 1:
        raise ParameterError("a must be prime to p")
    if w0 > a * p**N:
        raise ParameterError("need w0 <= a p^N0")
    if p != 2:
        if w0 % p or w0 <= a + 1:
            raise ParameterError("p != 2 needs w0 in pN and w0 > a + 1")
        return w0 - a + 1
    if w0 % 4 or w0 <= a + 2:
        raise ParameterError("p = 2 needs w0 in 4N and w0 > a + 2")
    return (w0 - a + 1) // 2


def reconstruction_v0(p: int, N: int, a: int, w0: int) -> int:
    return _check_window(p, N, a, w0)


def _leading(F: FiniteField, diag: Dict[int, int]) -> int:
    """h1^{-1} from the values h1^{-c}, combined by Bezout."""
    items = sorted(diag.items())
    # keep (exponent, value) with value = x^exponent and shrink the exponent
    cur_e, cur_v = None, None
    for c, val in items:
        if cur_e is None:
            cur_e, cur_v = c, val
            continue
        d, x, y = _egcd(cur_e, c)
        cur_v = F.mul(_fpow(F, cur_v, x), _fpow(F, val, y))
        cur_e = d
        if cur_e == 1:
            break
    if cur_e != 1:
        raise HypothesisFailure("diagonal entries do not determine the leading coefficient")
    return cur_v


def _fpow(F, x, e):
    if e >= 0:
        return F.pow(x, e)
    return F.pow(F.inv(x), -e)


def _egcd(a, b):
    if b == 0:
        return a, 1, 0
    d, x, y = _egcd(b, a % b)
    return d, y, x - (a // b) * y


def reconstruct_eta(f: CoeffTable, a: int, w0: int) -> Reconstruction:
    """Recover eta(t) modulo t^v0 from the analytic window of f.

    In the window a <= c <= b < w0 the entry alpha_cb0 is the t^{-c}
    coefficient of eta^{-1}(t)^{-b}.  With eta^{-1}(t) = h1 t (1 + u) this is
    h1^{-b} [t^(b-c)] (1 + u)^{-b}, which is solved for u level by level.
    For p = 2 only even levels occur: there (1 + u)^{-b} has even part
    G (1 + S)^{-(b-1)/2} with G the even part of (1 + u)^{-1} and
    S(t) = u(t)^2, and the pair (G_J, S_J) is solved from two columns.
    """
    F = f.field
    p, N = F.p, F.N0
    v0 = _check_window(p, N, a, w0)
    if f.a_max < a or f.b_max < w0 - 1:
        raise ParameterError(f"table must cover rows >= {a} and columns < {w0}")
    diag = {c: f.get(c, c, 0) for c in range(a, w0) if c % p}
    if any(x == 0 for x in diag.values()):
        return Reconstruction(v0, 1, None, False, note="zero diagonal entry")
    try:
        hinv = _leading(F, diag)
    except HypothesisFailure as exc:
        return Reconstruction(v0, 1, None, False, note=str(exc))
    h1 = F.inv(hinv)
    consistent = all(F.pow(hinv, c) == x for c, x in diag.items())

    def E(b, J):
        # [t^J] (1 + u)^{-b}
        return F.mul(f.get(b - J, b, 0), F.pow(h1, b))

    Jmax = w0 - 1 - a
    if p != 2:
        u = {0: 1}
        attained_u = 0
        for J in range(1, Jmax + 1):
            cands = [b for b in range(a + J, w0) if b % p and (b - J) % p]
            if not cands:
                break
            ser = LaurentSeries(F, dict(u), J + 1)
            ser_inv = ser.inverse(J + 1)
            vals = []
            for b in cands:
                cur = ser_inv.power(b, J + 1)[J]
                vals.append((b, cur))
            b0, cur0 = vals[0]
            uj = F.div(F.sub(E(b0, J), cur0), F.from_int(-b0))
            u[J] = uj
            for b, cur in vals[1:]:
                if F.add(cur, F.mul(F.from_int(-b), uj)) != E(b, J):
                    consistent = False
            attained_u = J
        hcoeffs = {k + 1: F.mul(h1, c) for k, c in u.items()}
        prec = attained_u + 2
    else:
        G = {0: 1}
        S = {0: 0}
        attained_s = 0
        for J in range(2, Jmax + 1, 2):
            cands = [b for b in range(a + J, w0) if b % 2]
            by_k = {}
            for b in cands:
                by_k.setdefault(((b - 1) // 2) % 2, b)
            if len(by_k) < 2:
                break
            Gs = LaurentSeries(F, dict(G), J + 1)
            Ss = LaurentSeries(F, {0: 1, **{k: c for k, c in S.items() if k}}, J + 1)
            rows = []
            for b in cands:
                k = (b - 1) // 2
                cur = (Gs * Ss.inverse(J + 1).power(k, J + 1))[J]
                # E = cur + G_J + k * S_J   (char 2: -k = k)
                rows.append((b, k % 2, F.sub(E(b, J), cur)))
            r0 = next(r for r in rows if r[1] == 0)
            r1 = next(r for r in rows if r[1] == 1)
            GJ = r0[2]
            SJ = F.sub(r1[2], GJ)
            G[J], S[J] = GJ, SJ
            for b, par, rhs in rows:
                if F.add(GJ, SJ if par else 0) != rhs:
                    consistent = False
            attained_s = J
        # u_j = sqrt(S_2j)
        u = {0: 1}
        for j in range(1, attained_s // 2 + 1):
            u[j] = _sqrt(F, S.get(2 * j, 0))
        # consistency of G with u
        n = attained_s // 2 + 1
        if n > 1:
            inv = LaurentSeries(F, dict(u), n).inverse(n)
            for J in range(2, n, 2):
                if inv[J] != G.get(J, 0):
                    consistent = False
        hcoeffs = {k + 1: F.mul(h1, c) for k, c in u.items()}
        prec = attained_s // 2 + 2
    h = LaurentSeries(F, hcoeffs, prec)
    eta = AutSeries(F, series_reversion(h, prec)) if prec >= 2 else None
    first = None
    if eta is not None and f.source is not None:
        first = eta.first_difference(f.source)
    return Reconstruction(v0, prec, eta, consistent, first)


@dataclass
class PairCertificate:
    """Window agreement of two tables and the resulting congruence of eta, eta1."""

    v0: int
    window_agrees: bool
    first_difference: Optional[int]
    compared_to: int

    @property
    def holds(self) -> bool:
        """Agreement on the window forces eta = eta1 modulo t^v0."""
        if not self.window_agrees:
            return True
        return self.first_difference is None or self.first_difference >= self.v0


def window_agrees(f: CoeffTable, g: CoeffTable, a: int, w0: int) -> bool:
    p = f.p
    for c in range(a, w0):
        for b in range(c, w0):
            if c % p and b % p and f.get(c, b, 0) != g.get(c, b, 0):
                return False
    return True


def certify_pair(f: CoeffTable, g: CoeffTable, a: int, w0: int) -> PairCertificate:
    """Compare two tables on a <= c <= b < w0 and their source series directly."""
    if f.source is None or g.source is None:
        raise ParameterError("both tables must come from automorphisms")
    v0 = _check_window(f.p, f.N, a, w0)
    agree = window_agrees(f, g, a, w0)
    first = f.source.first_difference(g.source)
    return PairCertificate(v0, agree, first, min(f.source.prec, g.source.prec))


# ---------------------------------------------------------------------------
# diagonal law


@dataclass
class DiagonalReport:
    alpha: int
    range_limit: int
    power_law_ok: bool
    relations_checked: int
    relation_failures: List[Tuple[int, int, int, int]]
    power_failures: List[int]

    @property
    def ok(self) -> bool:
        return self.power_law_ok and not self.relation_failures


def diagonal_range(p: int, N: int) -> int:
    """Exclusive bound on a for alpha_aa0 = alpha_110^a."""
    if p != 2:
        return p ** (N - 1) if N >= 2 else 1
    return 2**N if N >= 3 else 1


def diagonal_law_check(f: CoeffTable) -> DiagonalReport:
    """alpha_aa0 = alpha_110^a on the range, and
    alpha_{a1 a1 0} alpha_{a2 a2 0} = sigma^s alpha_aa0 whenever a1 + a2 = p^s a <= p^N.
    """
    F = f.field
    p, N = F.p, F.N0
    lim = diagonal_range(p, N)
    alpha = f.get(1, 1, 0)
    pf = []
    for a in range(1, lim):
        if a % p and a <= min(f.a_max, f.b_max):
            if f.get(a, a, 0) != F.pow(alpha, a):
                pf.append(a)
    rf = []
    count = 0
    top = min(p**N, f.a_max, f.b_max)
    for v in range(p, top + 1, p):
        a, s = _split_p(v, p)
        for a1 in range(1, v):
            a2 = v - a1
            if a1 % p == 0 or a2 % p == 0 or a1 > a2:
                continue
            count += 1
            lhs = F.mul(f.get(a1, a1, 0), f.get(a2, a2, 0))
            rhs = F.frob(f.get(a, a, 0), s)
            if lhs != rhs:
                rf.append((a1, a2, a, s))
    return DiagonalReport(alpha, lim, not pf, count, rf, pf)


# ---------------------------------------------------------------------------
# full normalisation


def r_of(f: CoeffTable, bound: int) -> int:
    """Largest r with alpha_ab0 = 0 for a < b < a + r, a, b < bound (capped at bound)."""
    p = f.p
    r = bound
    for a in range(1, bound):
        if a % p == 0:
            continue
        for b in range(a + 1, bound):
            if b % p and f.get(a, b, 0) != 0:
                r = min(r, b - a)
                break
    return r


@dataclass
class NormalizeTrace:
    eta: AutSeries
    table: CoeffTable
    r_history: List[int]
    target: int


def normalize_full(f: CoeffTable, max_rounds: int = 256) -> NormalizeTrace:
    """eta with alpha_ab0(f eta^*) = delta_ab for a <= b < p^(N-3).

    First the diagonal is scaled to 1, then r(f) is raised with
    ``normalize_step`` until it reaches p^(N-3) - 1.
    """
    F = f.field
    p, N = F.p, F.N0
    if N < 3:
        raise ParameterError("needs N0 >= 3")
    a11 = f.get(1, 1, 0)
    if a11 == 0:
        raise HypothesisFailure("alpha_110 must be nonzero", (1, 1, 0))
    bound = p ** (N - 2)
    target = p ** (N - 3) - 1
    need = max(bound, target + 4)
    if f.b_max < need or f.a_max < min(3, need):
        raise ParameterError(f"table must cover rows and columns up to {need}")
    prec = f.b_max + 2
    # alpha_aa0(eta^*) = c^a for eta(t) = c t
    eta = AutSeries.scalar(F, F.inv(a11), prec)

    def current(e):
        return compose_tables(f, induced_alpha(e, f.b_max, f.b_max))

    g = current(eta)
    hist = [r_of(g, bound)]
    rounds = 0
    while hist[-1] < target:
        rounds += 1
        if rounds > max_rounds:
            raise HypothesisFailure(f"no progress; r history {hist}")
        r = hist[-1]
        if p != 2:
            w0 = 1 + r
        else:
            w0 = r + 2 if r % 4 == 2 else r
        try:
            step = normalize_step(g, w0)
        except HypothesisFailure as exc:
            dump = {x: g.get(x, x + r, 0) for x in range(1, bound - r) if x % p and (x + r) % p}
            raise HypothesisFailure(f"step failed at r={r}: {exc}; alpha_a(r) = {dump}") from exc
        eta = eta.then(step)
        g = current(eta)
        r_new = r_of(g, bound)
        if r_new <= r:
            dump = {x: g.get(x, x + r, 0) for x in range(1, bound - r) if x % p and (x + r) % p}
            raise HypothesisFailure(f"r did not increase from {r}; alpha_a(r) = {dump}")
        hist.append(r_new)
    return NormalizeTrace(eta, g, hist, target)


def is_normalized(f: CoeffTable, bound: int) -> bool:
    """alpha_ab0 = delta_ab for a <= b < bound."""
    p = f.p
    for a in range(1, bound):
        if a % p == 0:
            continue
        for b in range(a, bound):
            if b % p and f.get(a, b, 0) != (1 if a == b else 0):
                return False
    return True
