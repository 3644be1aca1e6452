"""The exponential E(beta, X) = exp(sum_i sigma^i(beta) X^(p^i) / p^i) and friends.

E(beta, X) has coefficients in W(k).  It is computed from the functional
equation

    E(X)^p = E^sigma(X^p) * exp(p beta X),

which determines e_n from e_0..e_(n-1) with a single division by p.  An
error in e_m is only amplified when it reaches e_(pm) through
E^sigma(X^p), so n-th coefficient loses at most 1 + floor(log_p n) digits.
Working at Witt length M + guard with guard >= floor(log_p xprec) + 1
therefore returns exact coefficients modulo p^M.

Arguments beta are elements of W(k): an ``int``, or a ``WittVec`` read with
all components past its length equal to zero.  Because E(beta, X) mod p^M
depends on beta modulo p^(M + guard) once X-degrees up to xprec are kept,
the same holds for sums: to test E(b)E(b') = E(b + b') the sum must be
formed at length M + guard.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .errors import ParameterError, PrecisionError
from .fields import FiniteField
from .series import LaurentSeries, residue_series, series_reversion, teichmuller_lift
from .witt import WittVec, zq_ring


def required_guard(p: int, xprec: int) -> int:
    """floor(log_p(xprec)) + 1, computed in integers."""
    k = 0
    while p ** (k + 1) <= xprec:
        k += 1
    return k + 1


@dataclass(frozen=True)
class AHParams:
    """Witt length of the result, X-adic precision and extra p-adic digits."""

    M: int
    xprec: int
    guard: Optional[int] = None

    def guard_for(self, p: int) -> int:
        need = required_guard(p, self.xprec)
        if self.guard is None:
            return need
        if self.guard < need:
            raise PrecisionError(f"guard {self.guard} too small for xprec {self.xprec}; need {need}", required=need)
        return self.guard


Beta = Union[int, WittVec]


def _lift_beta(beta: Beta, R):
    if isinstance(beta, int):
        return R.from_int(beta)
    if beta.field is not R.field:
        raise ParameterError("beta lives over a different residue field")
    comps = beta.comps[: R.L] + (0,) * max(0, R.L - beta.length)
    return R.from_witt(comps)


def _exp_scaled_coeffs(p: int, scale_exp: int, n: int, mod: int):
    """Integers p^(scale_exp*k)/k! mod `mod` for k < n (they are p-integral)."""
    out = []
    for k in range(n):
        fr = Fraction(p ** (scale_exp * k), _factorial(k))
        if fr.denominator % p == 0:
            raise AssertionError("non-integral exponential coefficient")
        out.append(fr.numerator * pow(fr.denominator, -1, mod) % mod)
    return out


def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _exp_linear(R, c, scale_exp: int, n: int):
    """Dense coefficients of exp(p^scale_exp * c * X) up to X^(n-1)."""
    ints = _exp_scaled_coeffs(R.p, scale_exp, n, R.mod)
    out = []
    power = R.one
    for k in range(n):
        out.append(R.scal(ints[k], power))
        power = R.mul(power, c)
    return out


def _ah_dense(R, b, n: int):
    """e_0..e_(n-1) of E(b, X) in the ring R (which includes the guard)."""
    p = R.p
    g = _exp_linear(R, b, 1, n)
    e = [R.one]
    # pw[j][m] = coefficient of X^m in E^j, j = 1..p
    pw = [None] + [[R.one] for _ in range(p)]
    sig = []  # sigma(e_m), filled lazily
    mul, add = R.mul, R.add
    for m in range(1, n):
        # knowns[j]: coefficient of X^m in E^j with e_m set to zero
        knowns = [None, R.zero]
        for j in range(2, p + 1):
            prev = pw[j - 1]
            acc = knowns[j - 1]
            for k in range(1, m):
                acc = add(acc, mul(e[k], prev[m - k]))
            knowns.append(acc)
        while len(sig) <= m // p:
            sig.append(R.sigma(e[len(sig)]))
        h = R.zero
        for i in range(m // p + 1):
            h = add(h, mul(sig[i], g[m - p * i]))
        em = R.div_p(R.sub(h, knowns[p]))
        e.append(em)
        for j in range(1, p + 1):
            pw[j].append(add(knowns[j], R.scal(j, em)))
    return e


def ah_exp(beta: Beta, params: AHParams, field: FiniteField) -> LaurentSeries:
    """E(beta, X) modulo (p^M, X^xprec) as a series over W_M(k)."""
    p = field.p
    guard = params.guard_for(p)
    R_big = zq_ring(field, params.M + guard)
    R = zq_ring(field, params.M)
    b = _lift_beta(beta, R_big)
    coeffs = _ah_dense(R_big, b, params.xprec)
    return LaurentSeries(R, {n: R_big.reduce_to(R, c) for n, c in enumerate(coeffs)}, params.xprec)


def _sigma_beta(beta: Beta, k: int) -> Beta:
    if isinstance(beta, int) or k == 0:
        return beta
    F = beta.field
    return WittVec(F, tuple(F.frob(c, k) for c in beta.comps))


def _spread(f: LaurentSeries, k: int, prec: int) -> LaurentSeries:
    """f(X^k), precision capped at prec."""
    return LaurentSeries(f.ring, {n * k: c for n, c in f.coeffs.items()}, min(prec, f.prec * k))


def ah_er(r: int, b: Beta, params: AHParams, field: FiniteField) -> LaurentSeries:
    """The series E_r(b, T) for 0 <= r <= M.

    E_0 = E(b, T) - 1 and, for r >= 1,
    E_r = (exp(p^r b T) - 1) * E(sigma b, T^p)^(p^(r-1)),
    which equals E(b, T)^(p^r) - E(sigma b, T^p)^(p^(r-1)).  For b in W(F_p)
    the twist by sigma is invisible.
    """
    if not 0 <= r <= params.M:
        raise ParameterError(f"r={r} outside 0..{params.M}")
    p = field.p
    R = zq_ring(field, params.M)
    one = LaurentSeries.one(R, params.xprec)
    if r == 0:
        return ah_exp(b, params, field) - one
    guard = params.guard_for(p)
    R_big = zq_ring(field, params.M + guard)
    bl = _lift_beta(b, R_big)
    lin = _exp_linear(R_big, bl, r, params.xprec)
    expo = LaurentSeries(R, {n: R_big.reduce_to(R, c) for n, c in enumerate(lin)}, params.xprec) - one
    inner_prec = -(-params.xprec // p)
    inner = ah_exp(_sigma_beta(b, 1), AHParams(params.M, inner_prec, guard), field)
    factor = _spread(inner, p, params.xprec).power(p ** (r - 1), params.xprec)
    return (expo * factor).with_prec(params.xprec)


def ah_er_leading(r: int, b: Beta, params: AHParams, field: FiniteField):
    """Coefficient of T in E_r(b, T); equals p^r * b."""
    return ah_er(r, b, AHParams(params.M, 2, params.guard), field)[1]


# ---------------------------------------------------------------------------
# the field K(N*, r*) and its uniformiser


def uniformiser_relation(
    q: int, m_star: int, M: int, prec: int, field: FiniteField
) -> Tuple[LaurentSeries, LaurentSeries]:
    """t = t1^q E(-1, t1^m*) at Witt length M + 1, and a reversion.

    The first series is t as a series in t1 over W_(M+1)(k), known modulo
    t1^prec.  Since t has valuation q, it has no compositional inverse in
    the ring of series in t; the second series is the reversion of the
    normalized relation s = t1 E(-1, t1^m*), i.e. t1 as a series in s,
    again to precision ``prec``.
    """
    p = field.p
    if q < 2 or p ** _logp(q, p) != q:
        raise ParameterError("q must be a power of p, at least p")
    if m_star % p == 0 or m_star < 1:
        raise ParameterError("m* must be a positive integer prime to p")
    if prec <= q + m_star:
        raise PrecisionError(f"precision must exceed q + m* = {q + m_star}", required=q + m_star + 1)
    L = M + 1
    xprec = -(-(prec - q) // m_star)
    E = ah_exp(-1, AHParams(L, xprec), field)
    unit = _spread(E, m_star, prec - q)
    t_series = unit.shift(q).with_prec(prec)
    norm = unit.shift(1).with_prec(prec - q + 1)
    rev = series_reversion(norm, prec - q + 1)
    return t_series, rev


def _logp(q, p):
    k = 0
    while q % p == 0 and q > 1:
        q //= p
        k += 1
    return k


def uniformiser_sides(q: int, m_star: int, M: int, prec: int, field: FiniteField):
    """Both sides of t^(p^M) = t1^(q p^M) E(-1, t1^m*)^(p^M) in W_(M+1)(k)((t1)).

    The left side is the p^M-th power of the Teichmueller lift of the residue
    series t mod p, the right side the p^M-th power of the lift provided by
    E(-1, .) itself.  Both are returned modulo t1^prec.
    """
    t_series, _ = uniformiser_relation(q, m_star, M, max(prec, q + m_star + 1), field)
    R = t_series.ring
    pM = field.p ** M
    lhs_base = teichmuller_lift(residue_series(t_series, field), R)
    lhs = lhs_base.power(pM)
    rhs = t_series.power(pM)
    cap = min(prec, lhs.prec, rhs.prec)
    return lhs.with_prec(cap), rhs.with_prec(cap)
