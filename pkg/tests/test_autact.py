import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittram import autact, oracles
from wittram.errors import ParameterError, UnknownEntry
from wittram.fields import get_field

FIELDS = [(2, 2), (3, 1), (3, 2), (5, 1)]
B = 12


@st.composite
def auts(draw, prec=B + 2):
    p, N0 = draw(st.sampled_from(FIELDS))
    F = get_field(p, N0)
    coeffs = draw(st.lists(st.integers(0, F.order - 1), min_size=prec - 1, max_size=prec - 1))
    if coeffs[0] == 0:
        coeffs[0] = 1
    return autact.AutSeries.from_coeffs(F, coeffs, prec)


@given(auts())
def test_two_routes_and_oracle_agree(eta):
    t1 = autact.induced_alpha(eta, 6, B)
    assert t1 == autact.induced_alpha_as(eta, 6, B)
    assert t1.entries == oracles.naive_alpha(eta.field, dict(eta.eta.items()), 6, B)


@given(auts())
def test_induced_tables_are_admissible(eta):
    assert autact.is_admissible(autact.induced_alpha(eta, B, B))


@given(auts(), st.data())
def test_composition_law(e1, data):
    F = e1.field
    coeffs = data.draw(st.lists(st.integers(0, F.order - 1), min_size=B + 1, max_size=B + 1))
    coeffs[0] = coeffs[0] or 1
    e2 = autact.AutSeries.from_coeffs(F, coeffs, B + 2)
    lhs = autact.compose_tables(autact.induced_alpha(e1, B, B), autact.induced_alpha(e2, B, B))
    rhs = autact.induced_alpha(e1.then(e2), B, B)
    assert autact.agree_below(lhs, rhs, B + 1)


@pytest.mark.parametrize("p,N0", FIELDS)
def test_scalar_automorphism(p, N0):
    # eta(t) = c t acts diagonally with alpha_aa0 = c^a
    F = get_field(p, N0)
    c = 2  # a primitive element in the log encoding
    t = autact.induced_alpha(autact.AutSeries.scalar(F, c, B + 2), B, B)
    for a in t.rows():
        assert t.get(a, a, 0) == F.pow(c, a)
        for b in t.cols():
            if b != a:
                assert t.get(a, b, 0) == 0


def test_frobenius_table_is_a_shift():
    F = get_field(3, 2)
    fr = autact.frobenius_table(F, 1, 6, 6)
    ident = autact.CoeffTable.identity(F, 6, 6)
    assert fr == autact.fr_shift(ident, 1)
    assert fr != ident
    assert autact.fr_shift(fr, 1) == ident  # N0 = 2


@pytest.mark.parametrize("p,N0,a,w0", [(3, 2, 1, 9), (5, 1, 1, 5), (2, 3, 1, 8)])
def test_reconstruction_certificate(p, N0, a, w0):
    F = get_field(p, N0)
    rng = random.Random(w0)
    for _ in range(3):
        eta = autact.AutSeries.random(F, w0 + 4, rng)
        rec = autact.reconstruct_eta(autact.induced_alpha(eta, w0, w0), a, w0)
        assert rec.certified
        expect = w0 - a + 1 if p != 2 else (w0 - a + 1) // 2
        assert rec.v0 == expect == autact.reconstruction_v0(p, N0, a, w0)


@pytest.mark.parametrize("p,N0", [(2, 3), (3, 2), (5, 2)])
def test_diagonal_law(p, N0):
    F = get_field(p, N0)
    lim = autact.diagonal_range(p, N0)
    eta = autact.AutSeries.random(F, lim + 2, random.Random(p))
    assert autact.diagonal_law_check(autact.induced_alpha(eta, lim, lim)).ok


def test_normalize_full_round_trip():
    F = get_field(3, 4)
    eta0 = autact.AutSeries.random(F, 14, random.Random(2))
    f = autact.induced_alpha(eta0, 12, 12)
    tr = autact.normalize_full(f)
    assert autact.is_normalized(tr.table, 3)
    comp = eta0.then(tr.eta)
    d = comp.first_difference(autact.AutSeries.identity(F, comp.prec))
    assert d is None or d >= 3


def test_table_errors():
    F = get_field(3, 1)
    with pytest.raises(ParameterError):
        autact.CoeffTable(F, 4, 4, {(3, 1, 0): 1})
    t = autact.CoeffTable.identity(F, 4, 4)
    with pytest.raises(UnknownEntry):
        t.get(5, 1, 0)
    with pytest.raises(ParameterError):
        autact.AutSeries.scalar(F, 0, 5)
