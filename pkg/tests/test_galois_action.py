import random
from fractions import Fraction

import pytest

from tameforge.errors import ClosureBoundExceeded, InvalidInput, LeviNotGaloisStable
from tameforge.galois_action import (
    GaloisAction,
    compute_orbits,
    depth_grid,
    ellipticity_report,
    on_depth_grid,
    orbit_torus_rank,
    stable_members,
)
from tameforge.rootdata import LeviSubsystem, RootDatum, direct_product, enumerate_weyl_group, simply_connected
from tameforge.serialization import load_json


@pytest.fixture
def a1a1(data_dir):
    return RootDatum.from_dict(load_json(data_dir / "a1a1.json"))


@pytest.fixture
def coxeter_action(data_dir):
    datum = RootDatum.from_dict(load_json(data_dir / "a2.json"))
    return GaloisAction.from_dict(load_json(data_dir / "coxeter.json"), datum)


def test_negation_orbits(a1a1, data_dir):
    action = GaloisAction.from_dict(load_json(data_dir / "neg.json"), a1a1)
    assert action.ramification_index == 2
    assert action.order == 2
    orbits = compute_orbits(action)
    assert orbits.orbits == ((0, 1), (2, 3))
    assert orbits.pair_map == (0, 1)
    assert orbits.orbit_pairs == (frozenset({0, 1}), frozenset({2, 3}))
    assert orbit_torus_rank(action, {0, 1}) == 1


def test_trivial_action_has_singleton_orbits(a1a1):
    orbits = compute_orbits(GaloisAction.trivial(a1a1))
    assert len(orbits.orbits) == 4
    assert len(orbits.orbit_pairs) == 2


def test_coxeter_orbits_pair_up(coxeter_action):
    assert coxeter_action.order == 3
    orbits = compute_orbits(coxeter_action)
    assert [len(o) for o in orbits.orbits] == [3, 3]
    assert orbits.pair_map == (1, 0)
    assert len(orbits.orbit_pairs) == 1


def test_generator_must_permute_roots(a1a1, malformed_dir):
    with pytest.raises(InvalidInput):
        GaloisAction.from_dict(load_json(malformed_dir / "non_root_galois.json"), a1a1)
    with pytest.raises(InvalidInput):
        GaloisAction(a1a1, (((2, 0), (0, 1)),))


def test_closure_bound(coxeter_action):
    bounded = GaloisAction(coxeter_action.datum, coxeter_action.generators, 1, closure_bound=2)
    with pytest.raises(ClosureBoundExceeded):
        compute_orbits(bounded)


def test_ellipticity(coxeter_action):
    datum = coxeter_action.datum
    report = ellipticity_report(coxeter_action, LeviSubsystem.empty(datum))
    assert report.T_elliptic_in_G
    assert report.ZH_mod_ZG_anisotropic
    split = ellipticity_report(GaloisAction.trivial(datum), LeviSubsystem.empty(datum))
    assert not split.T_elliptic_in_G
    alpha = datum.root_index([2, -1])
    with pytest.raises(LeviNotGaloisStable):
        ellipticity_report(coxeter_action, LeviSubsystem(datum, frozenset({alpha, datum.negatives[alpha]})))


def test_stable_members_expand_to_orbit_pairs(coxeter_action):
    assert stable_members(coxeter_action, [0]) == frozenset(range(6))


def test_depth_grid():
    assert on_depth_grid(Fraction(3, 2), 2)
    assert not on_depth_grid(Fraction(1, 3), 2)
    assert depth_grid(2, Fraction(1)) == [Fraction(0), Fraction(1, 2), Fraction(1)]


def test_round_trip_through_dict():
    datum = simply_connected("A2")
    action = GaloisAction(datum, (((-1, -1), (1, 0)),), 3)
    assert GaloisAction.from_dict(action.to_dict(), datum) == action


def test_float_generator_entry_rejected(a1a1):
    with pytest.raises(InvalidInput):
        GaloisAction.from_dict({"generators": [[[-1.0, 0], [0, -1]]]}, a1a1)
    with pytest.raises(InvalidInput):
        GaloisAction.from_dict({"generators": [[[0, 1], [1, 0]]], "ramification_index": 2.5}, a1a1)
    with pytest.raises(InvalidInput):
        GaloisAction(a1a1, (((True, 0), (0, 1)),))


@pytest.mark.parametrize(
    "datum",
    [
        direct_product(simply_connected("A1"), simply_connected("A1")),
        simply_connected("A2"),
        simply_connected("A3"),
    ],
    ids=lambda d: d.name,
)
def test_ellipticity_survives_enlarging_gamma(datum):
    rng = random.Random(datum.rank)
    minus_one = tuple(tuple(-int(i == j) for j in range(datum.rank)) for i in range(datum.rank))
    weyl = enumerate_weyl_group(datum)
    automorphisms = weyl + [tuple(tuple(-v for v in row) for row in w) for w in weyl]
    empty = LeviSubsystem.empty(datum)
    elliptic_seen = 0
    for trial in range(30):
        first = minus_one if trial % 3 == 0 else rng.choice(automorphisms)
        action = GaloisAction(datum, (first,))
        before = ellipticity_report(action, empty)
        larger = action.with_generators(rng.sample(automorphisms, 2))
        after = ellipticity_report(larger, empty)
        if before.T_elliptic_in_G:
            elliptic_seen += 1
            assert after.T_elliptic_in_G
        if before.ZH_mod_ZG_anisotropic:
            assert after.ZH_mod_ZG_anisotropic
    assert elliptic_seen >= 10
