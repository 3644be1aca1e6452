"""Finite-precision Laurent series over F_q or W_L(k).

A ``LaurentSeries`` stores its nonzero coefficients sparsely together with a
precision bound ``prec``: coefficients of t^n for n >= prec are unknown.
``prec=None`` marks an exact Laurent polynomial.  Every operation computes the
largest precision it can vouch for and never more.

The coefficient ring is either a ``FiniteField`` (characteristic p, so the
series live in k((t))) or a ``ZqRing`` (so the series live in W_L(k)((t))).
Both expose the same small duck-typed interface.
"""

from __future__ import annotations

from typing import Dict, Iterable, Optional, Tuple

from . import kernels
from .errors import NotInvertibleError, ParameterError, PrecisionError
from .fields import FiniteField

MAX_PREC = 1 << 22


def _pmin(*vals):
    vals = [v for v in vals if v is not None]
    return min(vals) if vals else None


class LaurentSeries:
    __slots__ = ("ring", "coeffs", "prec")

    def __init__(self, ring, coeffs: Optional[Dict[int, object]] = None, prec: Optional[int] = None):
        self.ring = ring
        if prec is not None and prec > MAX_PREC:
            raise PrecisionError(f"precision {prec} exceeds the supported bound")
        clean = {}
        if coeffs:
            is_zero = ring.is_zero
            for n, c in coeffs.items():
                if (prec is None or n < prec) and not is_zero(c):
                    clean[n] = c
        self.coeffs = clean
        self.prec = prec

    # construction

    @classmethod
    def zero(cls, ring, prec=None):
        return cls(ring, {}, prec)

    @classmethod
    def one(cls, ring, prec=None):
        return cls(ring, {0: ring.one}, prec)

    @classmethod
    def monomial(cls, ring, n: int, c=None, prec=None):
        return cls(ring, {n: ring.one if c is None else c}, prec)

    @classmethod
    def gen(cls, ring, prec=None):
        return cls.monomial(ring, 1, prec=prec)

    @classmethod
    def from_list(cls, ring, coeffs, lo: int = 0, prec=None):
        return cls(ring, {lo + i: c for i, c in enumerate(coeffs)}, prec)

    # inspection

    def valuation(self) -> Optional[int]:
        """Least exponent with a nonzero coefficient; ``prec`` for zero."""
        if self.coeffs:
            return min(self.coeffs)
        return self.prec

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, n: int):
        if self.prec is not None and n >= self.prec:
            raise PrecisionError(f"coefficient of t^{n} is beyond precision {self.prec}")
        return self.coeffs.get(n, self.ring.zero)

    def items(self) -> Iterable[Tuple[int, object]]:
        return sorted(self.coeffs.items())

    def degree(self) -> Optional[int]:
        return max(self.coeffs) if self.coeffs else None

    def truncate(self, prec: int) -> "LaurentSeries":
        return LaurentSeries(self.ring, self.coeffs, _pmin(prec, self.prec))

    def with_prec(self, prec: Optional[int]) -> "LaurentSeries":
        """Same coefficients, precision set to at most ``prec``."""
        return self.truncate(prec) if prec is not None else self

    def congruent(self, other: "LaurentSeries", n: Optional[int] = None) -> bool:
        """Equality of all coefficients below ``n`` (default: common precision)."""
        bound = _pmin(n, self.prec, other.prec)
        keys = set(self.coeffs) | set(other.coeffs)
        for k in keys:
            if bound is not None and k >= bound:
                continue
            if self.coeffs.get(k, self.ring.zero) != other.coeffs.get(k, self.ring.zero):
                return False
        return True

    def __eq__(self, other):
        return (
            isinstance(other, LaurentSeries)
            and self.ring is other.ring
            and self.prec == other.prec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.prec, tuple(sorted(self.coeffs.items()))))

    # ring operations

    def _check(self, other):
        if other.ring is not self.ring:
            raise ParameterError("series over different coefficient rings")

    def __add__(self, other):
        self._check(other)
        add = self.ring.add
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = add(out[n], c) if n in out else c
        return LaurentSeries(self.ring, out, _pmin(self.prec, other.prec))

    def __neg__(self):
        neg = self.ring.neg
        return LaurentSeries(self.ring, {n: neg(c) for n, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LaurentSeries":
        """Multiply every coefficient by the ring element ``c``."""
        mul = self.ring.mul
        return LaurentSeries(self.ring, {n: mul(c, x) for n, x in self.coeffs.items()}, self.prec)

    def scale_int(self, k: int) -> "LaurentSeries":
        scal = self.ring.scal
        return LaurentSeries(self.ring, {n: scal(k, x) for n, x in self.coeffs.items()}, self.prec)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by t^k."""
        prec = None if self.prec is None else self.prec + k
        return LaurentSeries(self.ring, {n + k: c for n, c in self.coeffs.items()}, prec)

    def __mul__(self, other):
        self._check(other)
        vf, vg = self.valuation(), other.valuation()
        prec = _pmin(
            None if other.prec is None or vf is None else vf + other.prec,
            None if self.prec is None or vg is None else vg + self.prec,
        )
        if not self.coeffs or not other.coeffs:
            return LaurentSeries(self.ring, {}, prec)
        return LaurentSeries(self.ring, kernels.series_mul(self.ring, self.coeffs, other.coeffs, prec), prec)

    def inverse(self, prec: Optional[int] = None) -> "LaurentSeries":
        """Multiplicative inverse; exact inputs need an explicit ``prec``."""
        if not self.coeffs:
            raise NotInvertibleError("zero series is not invertible")
        v = self.valuation()
        lead = self.coeffs[v]
        if not self.ring.is_unit(lead):
            raise NotInvertibleError("leading coefficient is not a unit")
        out_prec = None if self.prec is None else self.prec - 2 * v
        out_prec = _pmin(out_prec, prec)
        if out_prec is None:
            raise PrecisionError("inverse of an exact series needs a precision")
        n_terms = out_prec + v
        if n_terms <= 0:
            return LaurentSeries(self.ring, {}, out_prec)
        u = [self.coeffs.get(v + k, self.ring.zero) for k in range(n_terms)]
        b = kernels.unit_inverse(self.ring, u, n_terms)
        return LaurentSeries(self.ring, {k - v: c for k, c in enumerate(b)}, out_prec)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = LaurentSeries.one(self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def power(self, e: int, prec: Optional[int] = None) -> "LaurentSeries":
        """``self ** e`` with an optional precision cap on every step."""
        if e < 0:
            return self.inverse(prec).power(-e, prec)
        result = LaurentSeries.one(self.ring, prec)
        base = self.with_prec(prec)
        while e:
            if e & 1:
                result = (result * base).with_prec(prec)
            e >>= 1
            if e:
                base = (base * base).with_prec(prec)
        return result

    def derivative(self) -> "LaurentSeries":
        scal = self.ring.scal
        prec = None if self.prec is None else self.prec - 1
        return LaurentSeries(self.ring, {n - 1: scal(n, c) for n, c in self.coeffs.items()}, prec)

    def map_coeffs(self, fn, ring=None) -> "LaurentSeries":
        ring = ring or self.ring
        return LaurentSeries(ring, {n: fn(c) for n, c in self.coeffs.items()}, self.prec)

    def __repr__(self):
        return f"LaurentSeries({render(self)})"


def render(f: LaurentSeries, max_terms: int = 12) -> str:
    """Text form ``c*t^n + ... + O(t^prec)``."""
    parts = []
    for n, c in f.items()[:max_terms]:
        parts.append(f"{_fmt_coeff(f.ring, c)}*t^{n}")
    if len(f.coeffs) > max_terms:
        parts.append("...")
    if f.prec is not None:
        parts.append(f"O(t^{f.prec})")
    return " + ".join(parts) if parts else "0"


def _fmt_coeff(ring, c):
    if isinstance(ring, FiniteField):
        cs = ring.coords(c)
    else:
        cs = c
    return str(cs[0]) if len(cs) == 1 else "(" + ",".join(map(str, cs)) + ")"


def series_mul(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    return f * g


def series_inv(f: LaurentSeries, prec: Optional[int] = None) -> LaurentSeries:
    return f.inverse(prec)


def series_substitute(f: LaurentSeries, g: LaurentSeries, prec: Optional[int] = None) -> LaurentSeries:
    """The composite f(g).

    ``g`` must have valuation w >= 1; if f has negative exponents the leading
    coefficient of g must be a unit.  Exact inputs need ``prec``.
    """
    f._check(g)
    w = g.valuation()
    if w is None or not g.coeffs or w < 1:
        raise ParameterError("substituted series must have valuation >= 1")
    cand = []
    if f.prec is not None:
        cand.append(f.prec * w)
    if g.prec is not None:
        for n in f.coeffs:
            if n != 0:
                cand.append((n - 1) * w + g.prec)
    if prec is not None:
        cand.append(prec)
    if not cand:
        out_prec = None
    else:
        out_prec = min(cand)
    ring = f.ring
    out = LaurentSeries(ring, {0: f.coeffs[0]} if 0 in f.coeffs else {}, out_prec)
    if out_prec is None:
        # both exact: expand symbolically
        acc = out
        for n, c in f.items():
            if n == 0:
                continue
            term = g ** n if n > 0 else g.inverse() ** (-n)
            acc = acc + term.scale(c)
        return acc
    pos = sorted(n for n in f.coeffs if n > 0)
    neg = sorted((n for n in f.coeffs if n < 0), reverse=True)
    acc = out
    if pos:
        gp = g.with_prec(out_prec)
        power = gp
        k = 1
        for n in pos:
            if n * w >= out_prec:
                break
            while k < n:
                power = (power * gp).with_prec(out_prec)
                k += 1
            acc = acc + power.scale(f.coeffs[n]).with_prec(out_prec)
    if neg:
        if not ring.is_unit(g.coeffs[w]):
            raise ParameterError("negative exponents need a unit leading coefficient")
        ginv = g.inverse(out_prec + w)
        power = ginv
        k = 1
        for n in neg:
            while k < -n:
                power = (power * ginv).with_prec(out_prec)
                k += 1
            acc = acc + power.scale(f.coeffs[n]).with_prec(out_prec)
    return acc.with_prec(out_prec)


def series_reversion(g: LaurentSeries, prec: Optional[int] = None) -> LaurentSeries:
    """Compositional inverse h of g = c1*t + ..., so that g(h) = t."""
    if g.valuation() != 1 or not g.ring.is_unit(g.coeffs.get(1, g.ring.zero)):
        raise ParameterError("reversion needs valuation 1 and a unit linear coefficient")
    target = _pmin(g.prec, prec)
    if target is None:
        raise PrecisionError("reversion of an exact series needs a precision")
    ring = g.ring
    c1inv = ring.inv(g.coeffs[1])
    h = LaurentSeries(ring, {1: c1inv}, 2)
    dg = g.derivative()
    t = LaurentSeries.gen(ring)
    cur = 2
    while cur < target:
        cur = min(2 * cur, target)
        hh = LaurentSeries(ring, h.coeffs, cur)
        resid = series_substitute(g, hh, cur) - t
        denom = series_substitute(dg, hh, cur)
        corr = resid * denom.inverse(cur)
        h = (hh - corr).with_prec(cur)
    return h.with_prec(target)


def sigma_act(f: LaurentSeries, k: int = 1) -> LaurentSeries:
    """sigma^k: Frobenius on coefficients and t -> t^(p^k)."""
    if k < 0:
        raise ParameterError("sigma_act needs k >= 0")
    ring = f.ring
    pk = ring.p ** k
    prec = None if f.prec is None else f.prec * pk
    sig = ring.sigma
    return LaurentSeries(ring, {n * pk: sig(c, k) for n, c in f.coeffs.items()}, prec)


def teichmuller_lift(f: LaurentSeries, R) -> LaurentSeries:
    """Lift a k((t)) series to W_L(k)((t)) by Teichmueller digits [c]*t^n."""
    return LaurentSeries(R, {n: R.teich(c) for n, c in f.coeffs.items()}, f.prec)


def residue_series(f: LaurentSeries, field: FiniteField) -> LaurentSeries:
    """Reduction of a W_L(k)((t)) series modulo p."""
    R = f.ring
    return LaurentSeries(field, {n: R.residue(c) for n, c in f.coeffs.items()}, f.prec)


def change_precision_ring(f: LaurentSeries, R2) -> LaurentSeries:
    """Reduce W_L coefficients to a ring of smaller length."""
    R = f.ring
    return LaurentSeries(R2, {n: R.reduce_to(R2, c) for n, c in f.coeffs.items()}, f.prec)


# ---------------------------------------------------------------------------
# differential forms


class DiffForm:
    """The form f * dt/t with f a series over F_q."""

    __slots__ = ("series",)

    def __init__(self, series: LaurentSeries):
        if not isinstance(series.ring, FiniteField):
            raise ParameterError("differential forms are over F_q coefficients")
        self.series = series

    @classmethod
    def d(cls, g: LaurentSeries) -> "DiffForm":
        """d(g) = t g'(t) dt/t."""
        scal = g.ring.scal
        return cls(LaurentSeries(g.ring, {n: scal(n, c) for n, c in g.coeffs.items()}, g.prec))

    def is_integral(self) -> bool:
        v = self.series.valuation()
        return v is None or v >= 1

    def __add__(self, other):
        return DiffForm(self.series + other.series)

    def __sub__(self, other):
        return DiffForm(self.series - other.series)

    def __eq__(self, other):
        return isinstance(other, DiffForm) and self.series == other.series

    def __repr__(self):
        return f"DiffForm(({render(self.series)}) dt/t)"


def cartier(w: DiffForm) -> DiffForm:
    """C(sum c_n t^n dt/t) = sum over p | n of c_n^(1/p) t^(n/p) dt/t."""
    f = w.series
    F = f.ring
    p = F.p
    prec = None if f.prec is None else -((-f.prec) // p)
    out = {n // p: F.frob(c, -1) for n, c in f.coeffs.items() if n % p == 0}
    return DiffForm(LaurentSeries(F, out, prec))


def frobenius_twist(f: LaurentSeries) -> LaurentSeries:
    """f^p over F_q: coefficients to the p-th power, t -> t^p."""
    return sigma_act(f, 1)


# ---------------------------------------------------------------------------
# Artin-Schreier reduction


def artin_schreier_reduce(f: LaurentSeries, alpha0_residue: int) -> LaurentSeries:
    """Canonical representative of f modulo (sigma - id) k((t)).

    Terms t^(-p m) are pushed to t^(-m) with coefficient c^(1/p); the
    positive part is dropped; the constant c is replaced by Tr(c) * alpha_0.
    The result is supported on exponents -a with p not dividing a, plus an
    F_p multiple of the residue of alpha_0 at t^0.
    """
    F = f.ring
    if not isinstance(F, FiniteField):
        raise ParameterError("Artin-Schreier reduction works over F_q")
    if f.prec is not None and f.prec < 1:
        raise PrecisionError("need the constant term to reduce", required=1)
    p = F.p
    const = f.coeffs.get(0, 0)
    out = {}
    for n, c in f.items():
        if n >= 0:
            break
        m = n
        while m % p == 0:
            c = F.frob(c, -1)
            m //= p
        out[m] = F.add(out.get(m, 0), c)
    tr = F.abs_trace(const)
    out[0] = F.mul(tr, alpha0_residue)
    return LaurentSeries(F, out, 1)


def as_trace_class(reduced: LaurentSeries, alpha0_residue: int) -> int:
    """The F_p multiple of alpha_0 in a reduced representative."""
    F = reduced.ring
    c = reduced.coeffs.get(0, 0)
    if c == 0:
        return 0
    return F.to_int(F.div(c, alpha0_residue))
