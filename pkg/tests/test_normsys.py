import random

import pytest

from wittram import autact, normsys
from wittram.errors import ParameterError
from wittram.fields import get_field
from wittram.series import cartier

A, B = 4, 8


def _eta(p, N0, seed, prec=B + 2):
    return autact.AutSeries.random(get_field(p, N0), prec, random.Random(seed))


@pytest.mark.parametrize("p,N0", [(2, 1), (2, 2), (3, 1)])
def test_automorphism_tower_is_special_admissible(p, N0):
    tower = normsys.TowerTable.from_aut(_eta(p, N0, 1), 1, A, B)
    assert normsys.compatibility_failures(tower) == []
    assert normsys.special_admissible_check(tower).ok


@pytest.mark.parametrize("p,N0", [(2, 1), (3, 1)])
def test_frobenius_tower_is_rejected(p, N0):
    tower = normsys.TowerTable.frobenius(p, N0, 1, 1, A, B)
    assert not normsys.special_admissible_check(tower).ok


def test_empty_tower_passes():
    assert normsys.special_admissible_check(normsys.TowerTable.empty(2, 1, 1)).ok


def test_injected_entry_is_flagged():
    tower = normsys.TowerTable.from_aut(_eta(2, 1, 4), 1, A, B)
    bad = normsys.inject(tower, 1, (1, 3, 0), 2)
    assert normsys.compatibility_failures(bad) == [1]
    with pytest.raises(ParameterError, match="not compatible"):
        normsys.special_admissible_check(bad)


def test_connect_is_path_independent():
    eta = _eta(2, 1, 9)
    tower = normsys.TowerTable.from_aut(eta, 2, A, B)
    F0 = tower.levels[0].field
    direct = normsys.connect(tower.levels[2], F0)
    stepwise = normsys.connect(normsys.connect(tower.levels[2], tower.levels[1].field), F0)
    assert direct.entries == stepwise.entries == tower.levels[0].entries


@pytest.mark.parametrize("p,N0", [(2, 2), (3, 1)])
def test_a_checks(p, N0):
    eta = _eta(p, N0, 3, prec=p ** N0 + 2)
    table = autact.induced_alpha(eta, A, p**N0)
    bound = p**N0
    for a in table.rows():
        for n in range(2):
            assert normsys.a1_check(table, eta, a, n, bound)
    for e in range(1, bound):
        assert normsys.a2_check(eta, e, bound)
        assert normsys.a3_check(eta, e, bound)


def test_pi_maps():
    level = normsys.TowerLevel(2, 1, 1)
    assert normsys.kernel_window_check(level, 64, 5, -6).ok
    for a in (1, 3, 5):
        for n in range(level.N_s):
            assert normsys.cartier_compatible(level, a, n, 64)
    w = normsys.pi_map(3, 0, level, 64)
    assert sorted(e for e, _ in w.series.items()) == [3, 12, 48]
    # C lowers the frequency: t^12 + t^48 -> t^6 + t^24
    assert cartier(w).series == normsys.pi_map(3, 1, level, 32).series


def test_locally_analytic_reconstruction():
    eta = _eta(2, 1, 5, prec=20)
    tower = normsys.TowerTable.from_aut(eta, 2, 10, 18)
    rep = normsys.locally_analytic_check(tower)
    assert rep.ok
    assert rep.attained > 0
    d = rep.eta.first_difference(eta)
    assert d is None or d >= rep.attained


def test_level_too_large():
    with pytest.raises(ParameterError):
        normsys.TowerLevel(2, 8, 3)
