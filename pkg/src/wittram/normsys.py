"""Unramified towers K_s = k_s((t)), connecting maps and the pi maps to differentials.

Level s has residue field k_s of degree N_s = N0 p^s over F_p.  A tower
table holds one ``CoeffTable`` per level, with frequencies taken modulo N_s.
Only finitely many levels are built; statements about the projective limit
are checked on windows where the level-s data has stabilised.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from . import autact
from .autact import AutSeries, CoeffTable
from .errors import ParameterError
from .fields import FiniteField, embedding, get_field
from .series import DiffForm, LaurentSeries, cartier

# log/Zech tables are built per field; keep them small
MAX_FIELD_ORDER = 1 << 20


@dataclass(frozen=True)
class TowerLevel:
    p: int
    N0: int
    s: int

    def __post_init__(self):
        if self.s < 0:
            raise ParameterError("level must be >= 0")
        if self.p**self.N_s > MAX_FIELD_ORDER:
            raise ParameterError(f"k_{self.s} = F_(p^{self.N_s}) is too large for table arithmetic")

    @property
    def N_s(self) -> int:
        return self.N0 * self.p**self.s

    @property
    def field(self) -> FiniteField:
        return get_field(self.p, self.N_s)

    def below(self) -> "TowerLevel":
        if self.s == 0:
            raise ParameterError("level 0 has nothing below it")
        return TowerLevel(self.p, self.N0, self.s - 1)


def _descend_map(sub: FiniteField, sup: FiniteField) -> Dict[int, int]:
    emb = embedding(sub, sup)
    return {y: x for x, y in enumerate(emb)}


def embed_table(table: CoeffTable, sup: FiniteField) -> CoeffTable:
    """The same coefficients read in a larger field (frequencies unchanged)."""
    emb = embedding(table.field, sup)
    ent = {k: emb[c] for k, c in table.entries.items()}
    return CoeffTable(sup, table.a_max, table.b_max, ent, table.provenance, None, table.window)


def embed_series(eta: AutSeries, sup: FiniteField) -> AutSeries:
    emb = embedding(eta.field, sup)
    return AutSeries(sup, eta.eta.map_coeffs(lambda c: emb[c], sup))


def connect(table: CoeffTable, lower: FiniteField) -> CoeffTable:
    """alpha_abm(lower) = sum over n = m mod N_lower of alpha_abn(upper).

    The sums must lie in the lower field; otherwise the table is not part of
    a compatible system and ParameterError is raised.
    """
    sup = table.field
    if lower.p != sup.p or sup.N0 % lower.N0:
        raise ParameterError("lower field is not a subfield")
    back = _descend_map(lower, sup)
    acc: Dict[Tuple[int, int, int], int] = {}
    for (a, b, n), c in table.entries.items():
        key = (a, b, n % lower.N0)
        acc[key] = sup.add(acc.get(key, 0), c)
    ent = {}
    for key, c in acc.items():
        if c == 0:
            continue
        if c not in back:
            raise ParameterError(f"connected entry {key} does not lie in the lower field")
        ent[key] = back[c]
    return CoeffTable(lower, table.a_max, table.b_max, ent, f"connected {table.provenance}", None, table.window)


@dataclass
class TowerTable:
    p: int
    N0: int
    levels: Dict[int, CoeffTable]
    provenance: str = "abstract"
    source: Optional[AutSeries] = None  # eta over k when built from one

    @property
    def s_max(self) -> int:
        return max(self.levels)

    def level(self, s: int) -> TowerLevel:
        return TowerLevel(self.p, self.N0, s)

    @classmethod
    def from_aut(cls, eta: AutSeries, s_max: int, a_max: int, b_max: int) -> "TowerTable":
        """eta^*_s on every level, eta defined over K."""
        p, N0 = eta.field.p, eta.field.N0
        levels = {}
        for s in range(s_max + 1):
            F = TowerLevel(p, N0, s).field
            levels[s] = autact.induced_alpha(embed_series(eta, F), a_max, b_max)
        return cls(p, N0, levels, "automorphism", eta)

    @classmethod
    def frobenius(cls, p: int, N0: int, n: int, s_max: int, a_max: int, b_max: int) -> "TowerTable":
        """Fr(t)^{*n} on every level."""
        levels = {}
        for s in range(s_max + 1):
            F = TowerLevel(p, N0, s).field
            levels[s] = autact.frobenius_table(F, n, a_max, b_max)
        return cls(p, N0, levels, f"Fr^{n}")

    @classmethod
    def twisted(cls, eta: AutSeries, n: int, s_max: int, a_max: int, b_max: int) -> "TowerTable":
        """Fr(t)^{*n} followed by eta^* on every level."""
        base = cls.from_aut(eta, s_max, a_max, b_max)
        levels = {s: autact.fr_shift(t, n) for s, t in base.levels.items()}
        return cls(base.p, base.N0, levels, f"Fr^{n} then automorphism")

    @classmethod
    def empty(cls, p: int, N0: int, s_max: int) -> "TowerTable":
        levels = {s: CoeffTable(TowerLevel(p, N0, s).field, 0, 0) for s in range(s_max + 1)}
        return cls(p, N0, levels, "empty")


def compatibility_failures(tower: TowerTable) -> List[int]:
    """Levels s >= 1 whose connected table differs from level s - 1."""
    bad = []
    for s in sorted(tower.levels):
        if s == 0:
            continue
        lower = tower.levels[s - 1]
        try:
            down = connect(tower.levels[s], lower.field)
        except ParameterError:
            bad.append(s)
            continue
        if down.entries != lower.entries:
            bad.append(s)
    return bad


# ---------------------------------------------------------------------------
# pi maps


def pi_map(a: int, n: int, level: TowerLevel, bound: int, coeff: int = 1) -> DiffForm:
    """pi(D^(s)_{a,n}) = (sum_i t^(a p^(n + i N_s))) dt/t modulo t^bound."""
    p, Ns = level.p, level.N_s
    if a % p == 0:
        raise ParameterError("a must be prime to p")
    if not 0 <= n < Ns:
        raise ParameterError(f"need 0 <= n < N_s = {Ns}")
    F = level.field
    out = {}
    e = a * p**n
    while e < bound:
        out[e] = coeff
        e *= p**Ns
    return DiffForm(LaurentSeries(F, out, bound))


def pi_linear(coeffs: Dict[Tuple[int, int], int], level: TowerLevel, bound: int) -> DiffForm:
    """pi of sum c_an D^(s)_an; the map is k_s-linear."""
    F = level.field
    acc = DiffForm(LaurentSeries.zero(F, bound))
    for (a, n), c in sorted(coeffs.items()):
        acc = acc + pi_map(a, n % level.N_s, level, bound, c)
    return acc


def pi_infinity(a: int, n: int, level: TowerLevel, bound: int) -> DiffForm:
    """The level-s component of pi(D^infty_an), n any integer."""
    return pi_map(a, n % level.N_s, level, bound)


@dataclass
class KernelReport:
    bound: int
    checked: int
    failures: List[Tuple[int, int]]

    @property
    def ok(self) -> bool:
        return not self.failures


def kernel_window_check(level: TowerLevel, bound: int, a_max: int, n_min: int) -> KernelReport:
    """On t-adic window ``bound``: pi(D^infty_an) = 0 for n < 0 and t^(a p^n) dt/t for n >= 0.

    Only pairs (a, n) whose level-s component has stabilised modulo t^bound
    (a p^(n mod N_s + N_s) >= bound for the tail) are tested.
    """
    p, Ns = level.p, level.N_s
    F = level.field
    fails, count = [], 0
    for a in range(1, a_max + 1):
        if a % p == 0:
            continue
        n = n_min
        while a * p ** max(n, 0) < bound:
            r = n % Ns
            if a * p ** (r + Ns) >= bound and (n >= 0 or a * p**r >= bound):
                count += 1
                got = pi_infinity(a, n, level, bound).series
                if n < 0:
                    want = LaurentSeries.zero(F, bound)
                else:
                    want = LaurentSeries.monomial(F, a * p**n, 1, bound)
                if got != want:
                    fails.append((a, n))
            n += 1
    return KernelReport(bound, count, fails)


def cartier_compatible(level: TowerLevel, a: int, n: int, bound: int) -> bool:
    """C(pi(D_{a,n+1})) = pi(D_{a,n}) up to the precision C leaves."""
    Ns = level.N_s
    up = cartier(pi_map(a, (n + 1) % Ns, level, bound))
    prec = up.series.prec
    return up.series == pi_map(a, n % Ns, level, prec).series


def omega_image(eta: AutSeries, e: int, bound: int) -> DiffForm:
    """Omega^1(eta)(t^e dt/t) = eta(t)^e d(eta(t))/eta(t), modulo t^bound."""
    g = eta.eta.with_prec(bound + 1)
    u = g.shift(-1)  # eta(t)/t, a unit
    w = (g.power(e, bound) * g.derivative() * u.inverse(bound)).with_prec(bound)
    return DiffForm(w)


def a1_check(table: CoeffTable, eta: AutSeries, a: int, n: int, bound: int) -> bool:
    """Omega^1(eta)(t^(a p^n) dt/t) = sum_{m <= n} sigma^n alpha_{a,b,-m} t^(b p^(n-m)) dt/t.

    Valid modulo t^bound when bound <= p^N (so level entries are the stable ones).
    """
    F = table.field
    p, N = F.p, F.N0
    if bound > p**N:
        raise ParameterError("bound must not exceed p^N_s")
    lhs = omega_image(eta, a * p**n, bound).series
    out: Dict[int, int] = {}
    for b in range(1, min(table.b_max, bound - 1) + 1):
        if b % p == 0:
            continue
        # at level N the residues -m mod N are distinct only for m < N
        for m in range(0, min(n, N - 1) + 1):
            c = table.get(a, b, -m) if a <= table.a_max else 0
            if c == 0:
                continue
            e = b * p ** (n - m)
            if e < bound:
                out[e] = F.add(out.get(e, 0), F.frob(c, n))
    rhs = LaurentSeries(F, out, bound)
    return lhs == rhs


def a2_check(eta: AutSeries, e: int, bound: int) -> bool:
    """Omega^1(eta) commutes with the Cartier operator on t^e dt/t."""
    w = omega_image(eta, e, bound)
    left = cartier(w).series
    src = cartier(DiffForm(LaurentSeries.monomial(eta.field, e, 1, bound))).series
    F = eta.field
    # Omega(eta) of a form f dt/t is f(eta) * eta-dlog
    prec = left.prec
    acc = LaurentSeries.zero(F, prec)
    for k, c in src.items():
        acc = acc + omega_image(eta, k, prec).series.scale(c)
    return left == acc.with_prec(prec)


def a3_check(eta: AutSeries, m: int, bound: int) -> bool:
    """t^m dt/t is sent into t^m Omega."""
    v = omega_image(eta, m, bound).series.valuation()
    return v is None or v >= m


# ---------------------------------------------------------------------------
# special admissible and locally analytic systems


@dataclass
class CheckRow:
    level: int
    check: str
    status: str
    witness: Optional[list] = None

    def to_json(self) -> dict:
        return {"level": self.level, "check": self.check, "status": self.status, "witness": self.witness}


@dataclass
class TowerReport:
    rows: List[CheckRow] = dc_field(default_factory=list)
    stable: Dict[Tuple[int, int, int], int] = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.status == "pass" for r in self.rows)

    def to_json(self) -> List[dict]:
        return [r.to_json() for r in self.rows]


def default_schedule(tower: TowerTable) -> Dict[int, int]:
    """v_s = p^(N_s), clipped to the stored range."""
    out = {}
    for s, t in tower.levels.items():
        cap = min(t.a_max, t.b_max) + 1
        out[s] = min(tower.p ** (tower.N0 * tower.p**s), cap)
    return out


def special_admissible_check(tower: TowerTable, v_schedule: Optional[Dict[int, int]] = None) -> TowerReport:
    """alpha_{a,b,-m mod N_s} = 0 for a, b < v_s, m >= 0 and b < a p^m, level by level.

    Refuses incompatible towers.  Also records the stabilised alpha^infty_{a,b,-m}
    (b < p^(N_s)) and asserts they do not depend on the level.
    """
    bad = compatibility_failures(tower)
    if bad:
        raise ParameterError(f"tower is not compatible at levels {bad}")
    if v_schedule is None:
        v_schedule = default_schedule(tower)
    rep = TowerReport()
    p = tower.p
    for s in sorted(tower.levels):
        t = tower.levels[s]
        Ns = t.N
        vs = v_schedule.get(s, 0)
        witness = None
        for a in t.rows():
            if a >= vs or witness:
                break
            for b in t.cols():
                if b >= vs:
                    break
                for m in range(Ns):
                    if b < a * p**m and t.entries.get((a, b, (-m) % Ns), 0):
                        witness = [a, b, -m]
                        break
                if witness:
                    break
        rep.rows.append(CheckRow(s, "vanishing", "fail" if witness else "pass", witness))
    # stabilised coefficients, read at the top level and compared downwards
    top = tower.s_max
    Ftop = tower.levels[top].field
    stable_fail = None
    for s in sorted(tower.levels):
        t = tower.levels[s]
        Ns = t.N
        emb = embedding(t.field, Ftop)
        for (a, b, n), c in t.entries.items():
            if b >= p**Ns:
                continue
            m = (-n) % Ns
            key = (a, b, -m)
            val = emb[c]
            if key in rep.stable and rep.stable[key] != val:
                stable_fail = [a, b, -m]
            rep.stable.setdefault(key, val)
        # entries absent at this level must be absent (zero) in the others too
    for s in sorted(tower.levels):
        t = tower.levels[s]
        Ns = t.N
        for (a, b, negm) in rep.stable:
            m = -negm
            if b < p**Ns and m < Ns and a <= t.a_max and b <= t.b_max:
                if t.entries.get((a, b, (-m) % Ns), 0) == 0:
                    stable_fail = [a, b, negm]
    rep.rows.append(CheckRow(top, "stabilisation", "fail" if stable_fail else "pass", stable_fail))
    return rep


@dataclass
class AnalyticReport:
    rows: List[CheckRow]
    eta: Optional[AutSeries]
    attained: int

    @property
    def ok(self) -> bool:
        return all(r.status == "pass" for r in self.rows)


def _largest_w0(p: int, N: int, a: int, cap: int) -> Optional[int]:
    step = p if p != 2 else 4
    w = (min(cap, a * p**N) // step) * step
    lo = a + 1 if p != 2 else a + 2
    return w if w > lo else None


def locally_analytic_check(tower: TowerTable, a: int = 1) -> AnalyticReport:
    """Rationality of alpha_ab0 on the stable window, and eta(t) rebuilt level by level.

    At level s the analytic window reaches b < min(p^(N_s), b_max + 1); the
    reconstruction from it determines eta(t) modulo t^v0 with v0 = w0 - a + 1
    (halved when p = 2).  The best partial eta over k is returned.
    """
    rows: List[CheckRow] = []
    p, N0 = tower.p, tower.N0
    base = get_field(p, N0)
    bad = compatibility_failures(tower)
    rows.append(CheckRow(tower.s_max, "compatibility", "fail" if bad else "pass", bad or None))
    best, attained = None, 0
    for s in sorted(tower.levels):
        t = tower.levels[s]
        F = t.field
        Ns = F.N0
        back = _descend_map(base, F)
        irr = None
        for (x, b, n), c in sorted(t.entries.items()):
            if n == 0 and b < p**Ns and c not in back:
                irr = [x, b, 0]
                break
        rows.append(CheckRow(s, "rational", "fail" if irr else "pass", irr))
        w0 = _largest_w0(p, Ns, a, min(t.a_max, t.b_max) + 1)
        if w0 is None or irr or t.a_max < a:
            continue
        rec = autact.reconstruct_eta(t, a, w0)
        status = "pass" if rec.consistent and rec.attained >= rec.v0 else "fail"
        rows.append(CheckRow(s, "reconstruct", status, [rec.v0, rec.attained]))
        if status == "pass" and rec.eta is not None and rec.attained > attained:
            coeffs = rec.eta.eta
            if all(c in back for _, c in coeffs.items()):
                best = AutSeries(base, coeffs.map_coeffs(lambda c: back[c], base))
                attained = rec.attained
    return AnalyticReport(rows, best, attained)


def inject(tower: TowerTable, s: int, key: Tuple[int, int, int], value: int) -> TowerTable:
    """Copy of the tower with one entry replaced (negative controls)."""
    levels = dict(tower.levels)
    t = levels[s]
    ent = dict(t.entries)
    ent[key] = value
    levels[s] = CoeffTable(t.field, t.a_max, t.b_max, ent, "modified", None, t.window)
    return TowerTable(tower.p, tower.N0, levels, "modified")
