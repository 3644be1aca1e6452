import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittram import oracles
from wittram.fields import get_field
from wittram.witt import (
    WittVec,
    teichmuller,
    verschiebung,
    witt_add,
    witt_frobenius,
    witt_mul,
    witt_neg,
    zq_ring,
)

FIELDS = [(2, 1), (2, 3), (3, 2), (5, 1)]


@st.composite
def witt_pair(draw, M_max=3):
    p, N0 = draw(st.sampled_from(FIELDS))
    F = get_field(p, N0)
    M = draw(st.integers(1, M_max))
    comp = st.integers(0, F.order - 1)
    x = WittVec(F, draw(st.lists(comp, min_size=M, max_size=M)))
    y = WittVec(F, draw(st.lists(comp, min_size=M, max_size=M)))
    z = WittVec(F, draw(st.lists(comp, min_size=M, max_size=M)))
    return x, y, z


@given(witt_pair())
def test_matches_ghost_oracle(xyz):
    x, y, _ = xyz
    F = x.field
    assert witt_add(x, y).comps == oracles.ghost_witt("add", F, x.comps, y.comps)
    assert witt_mul(x, y).comps == oracles.ghost_witt("mul", F, x.comps, y.comps)


@given(witt_pair())
def test_ring_axioms(xyz):
    x, y, z = xyz
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x + witt_neg(x) == WittVec.zero(x.field, x.length)
    assert x * WittVec.one(x.field, x.length) == x


@given(witt_pair())
def test_zq_round_trip(xyz):
    x, y, _ = xyz
    R = zq_ring(x.field, x.length)
    assert WittVec.from_zq(R, R.from_witt(x.comps)) == x
    assert WittVec.from_zq(R, R.mul(x.to_zq(R), y.to_zq(R))) == witt_mul(x, y)


@pytest.mark.parametrize("p,N0", FIELDS)
def test_frobenius_verschiebung(p, N0):
    F = get_field(p, N0)
    rng = random.Random(p * 10 + N0)
    for _ in range(20):
        x = WittVec(F, [F.random(rng) for _ in range(3)])
        # V F = multiplication by p
        assert verschiebung(witt_frobenius(x)).truncate(3) == WittVec.from_int(F, 3, p) * x
        a, b = F.random(rng), F.random(rng)
        assert teichmuller(F, F.mul(a, b), 3) == teichmuller(F, a, 3) * teichmuller(F, b, 3)
        assert witt_frobenius(teichmuller(F, a, 3)) == teichmuller(F, F.frob(a), 3)


def test_sigma_has_order_N0():
    F = get_field(3, 2)
    R = zq_ring(F, 3)
    rng = random.Random(5)
    for _ in range(10):
        a = R.random(rng)
        assert R.sigma(a, 2) == a
        t = R.trace(a)
        assert R.sigma(t) == t
