import random

import pytest

from tameforge.errors import EvenPrime, FieldCharacteristicZero, IndexOutOfRange, InvalidInput, NotARootSystem, NotLeviClosed
from tameforge.fields import FieldSpec
from tameforge.rootdata import (
    LeviSubsystem,
    RootDatum,
    adjoint,
    change_basis,
    classify_and_validate,
    direct_product,
    enumerate_weyl_group,
    fundamental_group_order,
    general_linear,
    is_levi_subsystem,
    simply_connected,
    special_linear,
    torsion_primes,
    torsion_quotient,
    torsion_report,
    weyl_stabilizer_order,
)
from tameforge.serialization import load_json

A2_GIVEN = {
    "rank": 2,
    "roots": [[2, -1], [-1, 2], [1, 1], [-2, 1], [1, -2], [-1, -1]],
    "coroots": [[1, 0], [0, 1], [1, 1], [-1, 0], [0, -1], [-1, -1]],
}


@pytest.mark.parametrize(
    "cartan_type, n_roots, weyl",
    [("A1", 2, 2), ("A2", 6, 6), ("B2", 8, 8), ("C3", 18, 48), ("G2", 12, 12), ("D4", 24, 192)],
)
def test_classification_of_standard_data(cartan_type, n_roots, weyl):
    datum = simply_connected(cartan_type)
    report = classify_and_validate(datum)
    assert datum.n_roots == n_roots
    assert report.types == (cartan_type,)
    assert report.weyl_order == weyl


@pytest.mark.parametrize("cartan_type", ["A2", "B2", "G2"])
def test_weyl_enumeration_matches_classified_order(cartan_type):
    datum = adjoint(cartan_type)
    assert len(enumerate_weyl_group(datum)) == classify_and_validate(datum).weyl_order


def test_product_has_two_components(data_dir):
    datum = RootDatum.from_dict(load_json(data_dir / "a1a1.json"))
    report = classify_and_validate(datum)
    assert report.types == ("A1", "A1")
    assert report.weyl_order == 4
    assert direct_product(simply_connected("A1"), simply_connected("A1")) == datum


def test_given_simple_system():
    datum = RootDatum.from_dict(A2_GIVEN)
    report = classify_and_validate(datum, "given")
    assert report.types == ("A2",)
    assert report.components[0].simple_roots == (0, 1)
    # (2,-1) and (1,1) are not a base: (-1,2) = (1,1) - (2,-1)
    with pytest.raises(InvalidInput):
        classify_and_validate(simply_connected("A2"), "given")


def test_malformed_data_rejected(malformed_dir):
    with pytest.raises(NotARootSystem) as excinfo:
        RootDatum.from_dict(load_json(malformed_dir / "bad_pairing.json"))
    assert excinfo.value.details["axiom"] == "pairing"
    with pytest.raises(InvalidInput):
        RootDatum.from_dict(load_json(malformed_dir / "missing_coroots.json"))


def test_missing_negative_rejected():
    with pytest.raises(NotARootSystem):
        RootDatum.from_dict({"rank": 1, "roots": [[2]], "coroots": [[1]]})


def test_change_basis_preserves_type():
    datum = change_basis(simply_connected("B2"), [[1, 1], [0, 1]])
    assert classify_and_validate(datum).types == ("B2",)


def test_levi_subsystems():
    datum = simply_connected("A2")
    assert is_levi_subsystem(datum, [])
    assert is_levi_subsystem(datum, range(datum.n_roots))
    alpha = datum.root_index([2, -1])
    pair = {alpha, datum.negatives[alpha]}
    assert LeviSubsystem(datum, frozenset(pair)).weyl_order() == 2
    with pytest.raises(NotLeviClosed):
        LeviSubsystem(datum, frozenset({alpha}))
    with pytest.raises(IndexOutOfRange):
        LeviSubsystem(datum, frozenset({99}))


def test_spanning_subset_missing_roots_is_not_levi():
    datum = adjoint("B2")
    subset = [datum.root_index(v) for v in ([1, 0], [-1, 0], [1, 2], [-1, -2])]
    assert not is_levi_subsystem(datum, subset)


def test_torsion_invariants():
    assert torsion_quotient(special_linear(3)) == [3]
    assert torsion_primes(special_linear(6)) == [2, 3]
    assert torsion_quotient(adjoint("A2")) == []
    assert fundamental_group_order(adjoint("A2")) == 3
    assert fundamental_group_order(simply_connected("A2")) == 1
    assert torsion_quotient(general_linear(3)) == []


def test_torsion_report_clauses():
    assert torsion_report(special_linear(3), 3).condition4_required
    assert not torsion_report(special_linear(3), 5).condition4_required
    assert not torsion_report(general_linear(3), 3).condition4_required
    assert torsion_report(adjoint("F4"), 3).condition4_required
    assert not torsion_report(adjoint("F4"), 5).condition4_required
    with pytest.raises(EvenPrime):
        torsion_report(special_linear(2), 2)


def test_weyl_stabilizer_over_finite_field():
    datum = simply_connected("A2")
    full = LeviSubsystem.full(datum)
    assert weyl_stabilizer_order(datum, full, [1, 1], FieldSpec(5)) == (6, 1)
    assert weyl_stabilizer_order(datum, full, [0, 0], FieldSpec(5)) == (1, 6)
    with pytest.raises(FieldCharacteristicZero):
        weyl_stabilizer_order(datum, full, [1, 1], None)


@pytest.mark.parametrize(
    "data",
    [
        {"rank": 1, "roots": [[2.9], [-2]], "coroots": [[1], [-1]]},
        {"rank": 1, "roots": [[2], [-2]], "coroots": [[1.0], [-1]]},
        {"rank": True, "roots": [[2], [-2]], "coroots": [[1], [-1]]},
        {"rank": 1, "roots": [["2"], [-2]], "coroots": [[1], [-1]]},
    ],
)
def test_non_integer_entries_rejected(data):
    with pytest.raises(InvalidInput):
        RootDatum.from_dict(data)


def _random_unimodular(rng, n, steps=12):
    matrix = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-2, -1, 1, 2])
        matrix[i] = [a + c * b for a, b in zip(matrix[i], matrix[j])]
    if rng.random() < 0.5:
        matrix[0] = [-a for a in matrix[0]]
    return matrix


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize(
    "datum",
    [special_linear(3), adjoint("A2"), adjoint("B2"), general_linear(3), simply_connected("A3")],
    ids=lambda d: d.name,
)
def test_fundamental_group_order_is_basis_independent(datum, seed):
    rng = random.Random(seed)
    moved = change_basis(datum, _random_unimodular(rng, datum.rank))
    assert fundamental_group_order(moved) == fundamental_group_order(datum)
    assert torsion_quotient(moved) == torsion_quotient(datum)
