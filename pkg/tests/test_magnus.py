import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittram import kernels, oracles
from wittram.magnus import (
    MagnusElem,
    MagnusParams,
    SubmoduleBasis,
    flatten,
    ideal_generate,
    magnus_mul,
    magnus_sigma,
    unflatten,
)

P = MagnusParams(3, 2, 2, 2)


@st.composite
def elems(draw, params=P):
    mod = params.p**params.M
    n = params.ncols
    vec = draw(st.lists(st.integers(0, mod - 1), min_size=n, max_size=n))
    return unflatten(params, vec)


@given(elems(), elems(), elems())
def test_algebra_laws(x, y, z):
    assert magnus_mul(magnus_mul(x, y), z) == magnus_mul(x, magnus_mul(y, z))
    assert magnus_mul(x, y + z) == magnus_mul(x, y) + magnus_mul(x, z)


@given(elems(), elems())
def test_cube_of_augmentation_vanishes(x, y):
    z = magnus_mul(magnus_mul(x, y), x)
    assert z.is_zero()


@given(elems(), elems())
def test_sigma_is_a_ring_map_of_order_N0(x, y):
    assert magnus_sigma(magnus_mul(x, y)) == magnus_mul(magnus_sigma(x), magnus_sigma(y))
    assert magnus_sigma(x, P.N0) == x


@given(elems())
def test_flatten_round_trip(x):
    assert unflatten(P, flatten(x)) == x


@pytest.mark.parametrize("p,M", [(2, 2), (2, 3), (3, 2)])
def test_howell_span_matches_enumeration(p, M):
    rng = random.Random(p * 7 + M)
    mod = p**M
    for _ in range(15):
        n = rng.randint(2, 4)
        rows = [[rng.randrange(mod) for _ in range(n)] for _ in range(rng.randint(1, 3))]
        h = kernels.howell_rows([list(r) for r in rows], n, p, M)
        assert oracles.brute_span(h, mod) == oracles.brute_span(rows, mod)
        # canonical: a shuffled generating set gives the same form
        shuffled = rows[::-1] + [[(2 * a) % mod for a in rows[0]]]
        assert kernels.howell_rows(shuffled, n, p, M) == h


@pytest.mark.parametrize("p,M", [(2, 2), (3, 2)])
def test_membership_matches_enumeration(p, M):
    rng = random.Random(11 * p + M)
    mod = p**M
    n = 3
    rows = [[rng.randrange(mod) for _ in range(n)] for _ in range(2)]
    h = kernels.howell_rows([list(r) for r in rows], n, p, M)
    piv = []
    for r in h:
        piv.append(next(i for i, a in enumerate(r) if a))
    span = oracles.brute_span(rows, mod)
    for v in oracles.product_rows(mod, n):
        inside = not any(kernels.reduce_vector(h, piv, list(v), p, mod))
        assert inside == (v in span)


def test_ideal_is_two_sided_and_sigma_stable():
    params = MagnusParams(2, 2, 2, 3)
    g = MagnusElem.generator(params, 1, 0)
    I = ideal_generate([g], params=params)
    assert I.contains(magnus_sigma(g))
    for x in I.elements()[:10]:
        for a, n in oracles.all_index_pairs(2, 3, 2):
            d = MagnusElem.generator(params, a, n)
            assert I.contains(magnus_mul(x, d))
            assert I.contains(magnus_mul(d, x))


def test_includes_and_sum():
    params = MagnusParams(2, 1, 2, 3)
    a = SubmoduleBasis.span(params, [MagnusElem.generator(params, 1, 0)])
    b = SubmoduleBasis.span(params, [MagnusElem.generator(params, 3, 0)])
    s = a + b
    assert s.includes(a) and s.includes(b)
    assert not a.includes(b)
    assert s.log_order() == a.log_order() + b.log_order()
