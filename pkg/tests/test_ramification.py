from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittram import oracles
from wittram.errors import ParameterError
from wittram.magnus import MagnusParams
from wittram.ramification import (
    Gamma,
    adm2_terms,
    build_F,
    build_F_tilde,
    build_ideal_Av,
    build_ideal_from_F_v,
    check_chain,
    enumerate_solutions,
    gamma_grid,
    linear_part,
    linear_span_expected,
    uniqueness_scan,
)


def test_gamma_normal_form():
    g = Gamma.of(2, Fr(6, 4))
    assert (g.mantissa, g.exponent) == (3, 1)
    assert Gamma.of(3, 18).split() == (2, 2)
    assert Gamma.of(3, Fr(1, 9)).vp() == -2
    with pytest.raises(ParameterError):
        Gamma.of(2, Fr(1, 3))


@st.composite
def gammas(draw):
    p = draw(st.sampled_from([2, 3]))
    e = draw(st.integers(0, 3))
    num = draw(st.integers(1, 60))
    return p, Fr(num, p**e)


@given(gammas(), st.integers(1, 2), st.integers(2, 5))
def test_build_F_matches_nested_loops(pg, N0, C):
    p, g = pg
    P = MagnusParams(p, N0, 2, C)
    assert build_F(g, P) == oracles.nested_F(g, P)


@given(gammas())
def test_solutions_have_the_right_value(pg):
    p, g = pg
    for s in enumerate_solutions(g, p, 7, 3):
        assert s.value(p) == g


def test_F_tilde_above_twice_v0_is_linear():
    P = MagnusParams(2, 2, 2, 5)
    v0 = Fr(3, 2)
    for g in gamma_grid(P, depth=3):
        if g >= 2 * v0 and g.denominator == 1:
            a, e = Gamma.of(2, g).split()
            if a <= P.C and e <= P.M:
                x = build_F_tilde(g, v0, P)
                assert not x.quad, g


@pytest.mark.parametrize("v", [Fr(1), Fr(3, 2), Fr(2), Fr(5, 2), Fr(4)])
def test_linear_part_of_ideal(v):
    P = MagnusParams(2, 2, 2, 3)
    assert linear_part(build_ideal_Av(v, P)) == linear_span_expected(v, P)


@pytest.mark.parametrize("v", [Fr(3, 2), Fr(2), Fr(5, 2), Fr(7, 2)])
def test_chain_small(v):
    rep = check_chain(v, MagnusParams(2, 2, 2, 3))
    assert rep.chain_ok and rep.basis_ok


@pytest.mark.parametrize(
    "p,C,v",
    [(3, 4, Fr(37, 9)), (5, 2, Fr(51, 25))],
)
def test_chain_counterexample_outside_admissible_span(p, C, v):
    # A(v) has elements outside A_adm here: condition (3) on adm2 elements
    # excludes terms that F_gamma(v) for some gamma >= v does contain
    rep = check_chain(v, MagnusParams(p, 1, 2, C))
    assert not rep.adm_contains_ideal
    assert rep.ideal_contains_tr and rep.tr_contains_p_adm
    assert rep.missing


def test_F_v_ideal_equals_ideal():
    P = MagnusParams(2, 2, 2, 3)
    for v in (Fr(2), Fr(5, 2), Fr(3)):
        assert build_ideal_from_F_v(v, P) == build_ideal_Av(v, P)


@pytest.mark.parametrize("p", [2, 3])
def test_uniqueness_integer_v(p):
    N0 = 3
    seen = 0
    for v in range(2, p**N0):
        for term in adm2_terms(v, p, N0, 0, 0):
            rep = uniqueness_scan(v, term, p, N0)
            if rep.hypothesis:
                seen += 1
                assert rep.count == 1, (v, term)
    assert seen


@pytest.mark.parametrize("p", [2, 3])
def test_uniqueness_half_integer_v_without_p_power(p):
    N0 = 4
    seen = 0
    for c in range(1, p ** (N0 - 2)):
        v = c + Fr(1, p)
        for term in adm2_terms(v, p, N0, 0, -1):
            rep = uniqueness_scan(v, term, p, N0)
            if rep.hypothesis and term[0] == 0:
                seen += 1
                assert rep.count == 1, (v, term)
    assert seen


def test_uniqueness_fails_with_p_power():
    # p^s D(1,0) D(1,-1) with s = 1 would need a bracket with n2 = n1 - 1 >= 0,
    # i.e. an integer gamma, and F_gamma(v) for integer gamma has no brackets
    rep = uniqueness_scan(Fr(5, 2), (1, 1, 0, 1, 3), 2, 4)
    assert rep.hypothesis
    assert rep.count == 0
