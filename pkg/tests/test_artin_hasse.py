import random
from fractions import Fraction

import pytest

from wittram import oracles
from wittram.artin_hasse import AHParams, ah_er, ah_exp, required_guard
from wittram.errors import PrecisionError
from wittram.fields import get_field
from wittram.witt import WittVec, zq_ring


@pytest.mark.parametrize("p,beta", [(2, 1), (2, 3), (3, 1), (3, 5), (5, 2)])
def test_integer_beta_matches_rational_series(p, beta):
    F = get_field(p, 1)
    M, n = 3, 30
    E = ah_exp(beta, AHParams(M, n), F)
    R = zq_ring(F, M)
    mod = p**M
    for k, c in enumerate(oracles.rational_ah(beta, p, n)):
        assert c.denominator % p != 0, "Artin-Hasse coefficients are p-integral"
        want = c.numerator * pow(c.denominator, -1, mod) % mod
        assert E[k] == R.from_int(want)


@pytest.mark.parametrize("p,N0", [(2, 2), (3, 2)])
def test_homomorphism(p, N0):
    F = get_field(p, N0)
    rng = random.Random(p)
    P = AHParams(3, 40)
    # E(b) mod p^M depends on b modulo p^(M + guard), so the sum b1 + b2
    # has to be taken at that length
    L = 3 + P.guard_for(p)
    for _ in range(5):
        b1 = WittVec(F, [F.random(rng) for _ in range(L)])
        b2 = WittVec(F, [F.random(rng) for _ in range(L)])
        assert ah_exp(b1, P, F) * ah_exp(b2, P, F) == ah_exp(b1 + b2, P, F)


def test_guard_is_checked():
    assert required_guard(2, 64) == 7
    with pytest.raises(PrecisionError):
        AHParams(2, 64, guard=3).guard_for(2)


@pytest.mark.parametrize("r", [0, 1, 2])
def test_er_divisible_by_p_power(r):
    F = get_field(3, 1)
    P = AHParams(3, 24)
    e = ah_er(r, 1, P, F)
    R = e.ring
    for _, c in e.items():
        assert R.valuation(c) >= r


def test_rational_oracle_first_terms():
    # exp(X + X^2/2) = 1 + X + X^2 + 2/3 X^3 + ...
    assert oracles.rational_ah(1, 2, 4) == [1, 1, 1, Fraction(2, 3)]
