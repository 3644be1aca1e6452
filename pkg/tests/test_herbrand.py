from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittram.errors import ParameterError
from wittram.herbrand import (
    PLFunction,
    check_conditions,
    compose,
    criterion_threshold,
    elementary_phi,
    invert,
    param_search,
)

fracs = st.fractions(min_value=Fr(1, 10), max_value=Fr(20), max_denominator=12)
degrees = st.sampled_from([2, 3, 4, 8, 9])


def test_elementary_example():
    phi = elementary_phi(8, Fr(5, 7))
    assert phi(12) == Fr(5, 7) + (12 - Fr(5, 7)) / 8
    assert phi(Fr(1, 2)) == Fr(1, 2)
    assert phi.is_herbrand()


@given(degrees, fracs, degrees, fracs, fracs)
def test_composition_stays_herbrand(q1, r1, q2, r2, x):
    f, g = elementary_phi(q1, r1), elementary_phi(q2, r2)
    h = compose(f, g)
    assert h.is_herbrand()
    assert h(x) == f(g(x))
    assert h.final_slope == Fr(1, q1 * q2)


@given(degrees, fracs, fracs)
def test_inverse(q, r, x):
    f = elementary_phi(q, r)
    assert invert(f)(f(x)) == x
    assert compose(f, invert(f)) == PLFunction.identity()


def test_bad_pl_functions():
    with pytest.raises(ParameterError):
        PLFunction(((Fr(1), Fr(1)),), (Fr(1),))
    with pytest.raises(ParameterError):
        elementary_phi(1, 1)
    with pytest.raises(ParameterError):
        elementary_phi(4, 0)
    with pytest.raises(ParameterError):
        elementary_phi(4, 1)(-1)


@pytest.mark.parametrize(
    "p,N0,C,M,v0",
    [(2, 1, 3, 1, Fr(5, 2)), (3, 1, 2, 1, Fr(5, 3)), (3, 2, 4, 1, Fr(10, 3)), (2, 2, 3, 1, Fr(3))],
)
def test_param_search_satisfies_conditions(p, N0, C, M, v0):
    pc = param_search(p, N0, C, M, v0)
    assert pc.N_star % N0 == 0
    assert pc.m_star % p
    ok, why = check_conditions(p, N0, C, M, v0, pc.N_star, pc.m_star)
    assert ok, why
    # the search returns the least N*: nothing smaller passes
    for N in range(N0, pc.N_star, N0):
        for m in range(1, p**N * 4):
            assert not check_conditions(p, N0, C, M, v0, N, m)[0]
    assert criterion_threshold(v0, p**pc.N_star, pc.r_star(p)) > 0
