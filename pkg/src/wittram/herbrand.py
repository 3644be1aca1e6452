"""Piecewise-linear Herbrand functions and the choice of the auxiliary field.

Everything is exact: corners and slopes are ``Fraction``s.  A
``PLFunction`` starts at the origin with slope 1 and is concave (slopes
positive and non-increasing), as Herbrand functions phi_{L/K} are.
Inverses are convex; ``invert`` and ``compose`` therefore accept and return
general increasing piecewise-linear functions through the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import ParameterError

Q = Fraction


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class PLFunction:
    """Increasing PL function with phi(0) = 0, given by its corners and last slope.

    ``slopes[i]`` is the slope on [corners[i-1].x, corners[i].x] (the first
    piece starts at 0); ``slopes[-1]`` is the slope after the last corner.
    """

    corners: Tuple[Tuple[Fraction, Fraction], ...]
    slopes: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.slopes) != len(self.corners) + 1:
            raise ParameterError("need one more slope than corners")
        prev = Q(0)
        for x, _ in self.corners:
            if x <= prev:
                raise ParameterError("corner abscissae must increase from 0")
            prev = x
        if any(s <= 0 for s in self.slopes):
            raise ParameterError("slopes must be positive")

    @classmethod
    def from_slopes(cls, breaks: Sequence, slopes: Sequence) -> "PLFunction":
        """Build from corner abscissae and the slopes of the len(breaks)+1 pieces."""
        breaks = [_q(b) for b in breaks]
        slopes = [_q(s) for s in slopes]
        corners = []
        x0, y0 = Q(0), Q(0)
        for b, s in zip(breaks, slopes):
            y0 = y0 + s * (b - x0)
            x0 = b
            corners.append((b, y0))
        return _normalize(corners, slopes)

    @classmethod
    def identity(cls) -> "PLFunction":
        return cls((), (Q(1),))

    @property
    def final_slope(self) -> Fraction:
        return self.slopes[-1]

    def is_concave(self) -> bool:
        return all(a >= b for a, b in zip(self.slopes, self.slopes[1:]))

    def is_herbrand(self) -> bool:
        return self.slopes[0] == 1 and self.is_concave()

    def __call__(self, x) -> Fraction:
        x = _q(x)
        if x < 0:
            raise ParameterError("Herbrand functions are evaluated on x >= 0")
        px, py = Q(0), Q(0)
        for (cx, cy), s in zip(self.corners, self.slopes):
            if x <= cx:
                return py + s * (x - px)
            px, py = cx, cy
        return py + self.slopes[-1] * (x - px)

    def breakpoints(self) -> List[Fraction]:
        return [c[0] for c in self.corners]

    def rows(self) -> List[Tuple[Fraction, Fraction, Fraction]]:
        """(x, y, slope after) for every corner."""
        return [(x, y, s) for (x, y), s in zip(self.corners, self.slopes[1:])]


def _normalize(corners, slopes) -> PLFunction:
    # drop corners where the slope does not change
    cs, ss = [], [slopes[0]]
    for c, s in zip(corners, slopes[1:]):
        if s == ss[-1]:
            continue
        cs.append(c)
        ss.append(s)
    return PLFunction(tuple(cs), tuple(ss))


def elementary_phi(q: int, r_star) -> PLFunction:
    """phi(x) = x up to r*, slope 1/q afterwards."""
    r = _q(r_star)
    if q < 2:
        raise ParameterError("q must be at least 2")
    if r <= 0:
        raise ParameterError("r* must be positive")
    return PLFunction(((r, r),), (Q(1), Q(1, q)))


def compose(phi1: PLFunction, phi2: PLFunction) -> PLFunction:
    """x -> phi1(phi2(x))."""
    xs = set(phi2.breakpoints())
    inv2 = invert(phi2)
    for b in phi1.breakpoints():
        xs.add(inv2(b))
    xs = sorted(xs)
    pts = [Q(0)] + xs
    slopes = []
    for a, b in zip(pts, pts[1:]):
        slopes.append((phi1(phi2(b)) - phi1(phi2(a))) / (b - a))
    tail = phi2.final_slope * phi1.final_slope
    slopes.append(tail)
    return _normalize([(x, phi1(phi2(x))) for x in xs], slopes)


def invert(phi: PLFunction) -> PLFunction:
    corners = [(y, x) for x, y in phi.corners]
    slopes = [1 / s for s in phi.slopes]
    return PLFunction(tuple(corners), tuple(slopes))


def criterion_threshold(v0, q: int, r_star) -> Fraction:
    """q v0 - r*(q - 1)."""
    v0, r = _q(v0), _q(r_star)
    if r >= v0:
        raise ParameterError("need r* < v0")
    return q * v0 - r * (q - 1)


def max_upper(v, r_star, phi: PLFunction) -> Fraction:
    """max{r*, phi(v)}: the top upper ramification number of the composite."""
    return max(_q(r_star), phi(_q(v)))


# ---------------------------------------------------------------------------
# delta_1, delta_2 and the search for (N*, m*)


def _vals_one(p: int, C: int, lo_exp: int, hi: Fraction) -> List[Fraction]:
    """{p^s a : a in Z^0(p), a <= C, s >= lo_exp} below hi."""
    out = {Q(0)}
    for a in range(1, C + 1):
        if a % p == 0:
            continue
        s = lo_exp
        while True:
            x = Q(a) * Q(p) ** s
            if x >= hi:
                break
            out.add(x)
            s += 1
    return sorted(out)


def delta1(p: int, C: int, v0) -> Fraction:
    """min{v0 - p^s a : p^s a < v0, s >= 0, a <= C, a in Z^0(p)}."""
    v0 = _q(v0)
    if v0 <= 0:
        raise ParameterError("v0 must be positive")
    return v0 - max(_vals_one(p, C, 0, v0))


def _max_below(p: int, C: int, u: Fraction) -> Fraction:
    """max{p^s a < u : s in Z, a in Z^0(p), a <= C} for u > 0."""
    best = Q(0)
    for a in range(1, C + 1):
        if a % p == 0:
            continue
        # largest p^s a below u
        x = Q(a)
        if x < u:
            while x * p < u:
                x *= p
        else:
            while x >= u:
                x /= p
        best = max(best, x)
    return best


def delta2(p: int, C: int, v0) -> Fraction:
    """min{v0 - (p^s1 a1 + p^s2 a2) : ... < v0, s_i in Z, a_i in Z^0(p), a_i <= C}.

    With x >= y the larger summand is at least half the best sum found so
    far, which is at least the best single term d1; so only x in the finite
    window [d1/2, v0) matter, and for each x the best partner is the largest
    admissible value below v0 - x.
    """
    v0 = _q(v0)
    if v0 <= 0:
        raise ParameterError("v0 must be positive")
    d1 = _max_below(p, C, v0)
    best = d1
    lo = d1 / 2
    lo_exp = 0
    while Q(C) * Q(p) ** lo_exp >= lo and lo > 0:
        lo_exp -= 1
    for x in _vals_one(p, C, lo_exp - 1, v0):
        if x < lo or x == 0:
            continue
        y = _max_below(p, C, v0 - x)
        best = max(best, x + y)
    return v0 - best


def check_conditions(p: int, N0: int, C: int, M: int, v0, N_star: int, m_star: int) -> Tuple[bool, str]:
    """Replay the three inequalities (and the shape constraints) exactly."""
    v0 = _q(v0)
    if N_star < 1 or N_star % N0:
        return False, "N* must be a positive multiple of N0"
    if m_star < 1 or m_star % p == 0:
        return False, "m* must be positive and prime to p"
    q = p**N_star
    r = Q(m_star, q - 1)
    if r >= v0:
        return False, "r* must be below v0"
    d1, d2 = delta1(p, C, v0), delta2(p, C, v0)
    if not (-(v0 - d1) * q + r * (q - 1) > C * p**M):
        return False, "condition a) fails"
    if not (-(v0 - d2) * q + r * (q - 1) > 0):
        return False, "condition b) fails"
    if not (v0 * q < 2 * r * (q - 1)):
        return False, "condition c) fails"
    return True, "ok"


@dataclass(frozen=True)
class ParamChoice:
    N_star: int
    m_star: int
    delta1: Fraction
    delta2: Fraction

    def r_star(self, p: int) -> Fraction:
        return Q(self.m_star, p**self.N_star - 1)


# the m* scan per N* stops after this many candidates; every m* above the
# lower bound and below v0 (q - 1) is admissible, so the window is only hit
# when ``skip`` asks for many sets
_M_WINDOW = 4096


def param_search(p: int, N0: int, C: int, M: int, v0, max_N: int = 64, skip: int = 0) -> ParamChoice:
    """Least N* (a multiple of N0) and least m* satisfying the three inequalities.

    ``skip`` returns the skip-th admissible (N*, m*) pair in the order
    (N*, m*) instead of the first; useful for producing several sets.
    """
    v0 = _q(v0)
    d1, d2 = delta1(p, C, v0), delta2(p, C, v0)
    seen = 0
    N = N0
    while N <= max_N:
        q = p**N
        # m* > max(v0 q / 2, C p^M + (v0 - d1) q, (v0 - d2) q) and m* < v0 (q - 1)
        lower = max(v0 * q / 2, C * p**M + (v0 - d1) * q, (v0 - d2) * q)
        m = int(lower) + 1
        while Q(m) < v0 * (q - 1):
            if m % p:
                ok, _ = check_conditions(p, N0, C, M, v0, N, m)
                if ok:
                    if seen == skip:
                        return ParamChoice(N, m, d1, d2)
                    seen += 1
            m += 1
            if m > lower + _M_WINDOW:
                break
        N += N0
    raise ParameterError(f"no admissible (N*, m*) with N* <= {max_N}")
