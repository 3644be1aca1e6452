import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittram.errors import PrecisionError
from wittram.fields import get_field
from wittram.series import (
    DiffForm,
    LaurentSeries,
    artin_schreier_reduce,
    cartier,
    series_reversion,
    series_substitute,
    sigma_act,
)

F = get_field(3, 2)
PREC = 20


@st.composite
def series(draw, lo=0, unit=False):
    cs = draw(st.lists(st.integers(0, F.order - 1), min_size=PREC - lo, max_size=PREC - lo))
    if unit and cs[0] == 0:
        cs[0] = 1
    return LaurentSeries(F, {lo + i: c for i, c in enumerate(cs)}, PREC)


@given(series(), series(), series())
def test_ring_laws(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f


@given(series(unit=True))
def test_inverse(u):
    one = LaurentSeries.one(F, PREC)
    assert u * u.inverse() == one


@given(series(lo=1, unit=True))
def test_reversion(g):
    r = series_reversion(g)
    t = LaurentSeries.gen(F, PREC)
    assert series_substitute(g, r) == t
    assert series_substitute(r, g) == t


@given(series(lo=-4))
def test_cartier_of_pth_power(f):
    # C(f^p dt/t) = f dt/t, and C kills exact forms
    w = DiffForm(sigma_act(f, 1))
    got = cartier(w).series
    assert got.congruent(f, min(got.prec, f.prec))
    assert cartier(DiffForm.d(f)).series.is_zero()


def test_artin_schreier_reduce_kills_sigma_minus_one():
    rng = random.Random(3)
    alpha0 = 1
    for _ in range(20):
        g = LaurentSeries(F, {n: F.random(rng) for n in range(-9, 0)}, 1)
        h = sigma_act(g, 1) - g
        assert artin_schreier_reduce(h.with_prec(1), alpha0).is_zero()


def test_reduce_needs_constant_term():
    with pytest.raises(PrecisionError):
        artin_schreier_reduce(LaurentSeries(F, {-1: 1}, 0), 1)
