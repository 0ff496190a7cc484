import random

import pytest

from tameforge import genericity
from tameforge.errors import InconsistentFunctional, InconsistentPrescription, InvalidInput, PropertyViolation, ZeroValue
from tameforge.fields import FieldSpec
from tameforge.genericity import (
    assemble_residue_functional,
    functional_from_codes,
    ge1_implies_ge2_sweep,
    ge_check,
)
from tameforge.rootdata import LeviSubsystem, general_linear, projective_linear, simply_connected, special_linear


@pytest.fixture
def a2():
    return simply_connected("A2")


def _pair(datum, vector):
    alpha = datum.root_index(vector)
    return LeviSubsystem(datum, frozenset({alpha, datum.negatives[alpha]}))


def test_regular_point_is_generic(a2):
    report = ge_check(
        a2,
        LeviSubsystem.empty(a2),
        LeviSubsystem.full(a2),
        functional_from_codes(FieldSpec(5), [1, 1]),
    )
    assert report.ge1 and report.ge2
    assert report.stabilizer_order == 1
    assert report.orbit_size == 6
    assert report.certified
    assert report.zero_set_matches


def test_wall_point_fails_both_conditions(a2):
    report = ge_check(
        a2,
        LeviSubsystem.empty(a2),
        LeviSubsystem.full(a2),
        functional_from_codes(FieldSpec(5), [1, 0]),
    )
    assert not report.ge1
    assert not report.ge2
    assert report.stabilizer_order == 2
    assert report.expected_order == 1


def test_generic_relative_to_a_levi(a2):
    lower = _pair(a2, [-1, 2])
    # X~ = (1, 0) kills the coroot (0, 1) of alpha_2 only
    report = ge_check(a2, lower, LeviSubsystem.full(a2), functional_from_codes(FieldSpec(7), [1, 0]))
    assert report.ge1 and report.ge2
    assert report.stabilizer_order == 2


def test_functional_nonzero_on_lower_rejected(a2):
    with pytest.raises(InconsistentFunctional):
        ge_check(a2, _pair(a2, [2, -1]), LeviSubsystem.full(a2), functional_from_codes(FieldSpec(5), [1, 0]))


def test_lower_must_sit_in_upper(a2):
    with pytest.raises(InvalidInput):
        ge_check(a2, LeviSubsystem.full(a2), _pair(a2, [2, -1]), functional_from_codes(FieldSpec(5), [0, 0]))


def test_assemble_solves_linear_system(a2):
    full = LeviSubsystem.full(a2)
    lower = _pair(a2, [-1, 2])
    alpha = a2.root_index([2, -1])
    functional = assemble_residue_functional(a2, lower, full, {alpha: 3}, FieldSpec(5))
    assert functional.coordinates == (3, 0)
    assert dict(functional.values)[alpha] == 3


def test_assemble_rejects_zero_and_inconsistent_values(a2):
    full = LeviSubsystem.full(a2)
    empty = LeviSubsystem.empty(a2)
    a, b, c = (a2.root_index(v) for v in ([2, -1], [-1, 2], [1, 1]))
    with pytest.raises(ZeroValue):
        assemble_residue_functional(a2, empty, full, {a: 5}, FieldSpec(5))
    with pytest.raises(InconsistentPrescription):
        assemble_residue_functional(a2, empty, full, {a: 1, b: 1, c: 1}, FieldSpec(5))
    with pytest.raises(InvalidInput):
        assemble_residue_functional(a2, _pair(a2, [2, -1]), full, {a: 1}, FieldSpec(5))


def test_functional_over_extension_field(a2):
    report = ge_check(
        a2,
        LeviSubsystem.empty(a2),
        LeviSubsystem.full(a2),
        functional_from_codes(FieldSpec(3, 2), [1, 3]),
    )
    assert report.ge1
    assert report.ge2


def test_certification_needs_coordinates_to_generate_the_field(a2):
    empty, full = LeviSubsystem.empty(a2), LeviSubsystem.full(a2)
    prime_field_point = ge_check(a2, empty, full, functional_from_codes(FieldSpec(5, 2), [1, 1]))
    assert prime_field_point.ge1 and prime_field_point.ge2
    assert prime_field_point.certified is False
    # code 5 is the generator of F_25 over F_5
    generating_point = ge_check(a2, empty, full, functional_from_codes(FieldSpec(5, 2), [1, 5]))
    assert generating_point.ge1 and generating_point.ge2
    assert generating_point.certified is True


@pytest.mark.parametrize(
    "spec, codes, lower_root",
    [
        (FieldSpec(5), [1, 1], None),
        (FieldSpec(5), [1, 0], None),
        (FieldSpec(7), [1, 0], [-1, 2]),
        (FieldSpec(3, 2), [1, 3], None),
        (FieldSpec(3, 2), [1, 1], None),
    ],
)
def test_verdict_is_invariant_under_scaling(a2, spec, codes, lower_root):
    lower = _pair(a2, lower_root) if lower_root else LeviSubsystem.empty(a2)
    full = LeviSubsystem.full(a2)
    functional = functional_from_codes(spec, codes)
    expected = ge_check(a2, lower, full, functional).to_dict()
    for unit in range(1, spec.order):
        assert ge_check(a2, lower, full, functional.scaled(unit)).to_dict() == expected


def test_fixing_roots_must_agree_with_ge1(a2, monkeypatch):
    monkeypatch.setattr(genericity, "_roots_fixing", lambda datum, upper, functional: frozenset({0}))
    with pytest.raises(PropertyViolation):
        ge_check(a2, LeviSubsystem.empty(a2), LeviSubsystem.full(a2), functional_from_codes(FieldSpec(5), [1, 1]))


@pytest.mark.parametrize(
    "datum, p",
    [
        (special_linear(3), 5),
        (special_linear(2), 3),
        (general_linear(3), 3),
        (projective_linear(3), 3),
        (projective_linear(4), 7),
    ],
    ids=lambda v: getattr(v, "name", v),
)
def test_ge1_implies_ge2_on_random_functionals(datum, p):
    report = ge1_implies_ge2_sweep(datum, FieldSpec(p), random.Random(p), samples=40)
    assert report["samples"] == 40
    assert sum(report["zero_set_sizes"].values()) == 40


def test_sweep_refuses_torsion_primes():
    with pytest.raises(InvalidInput):
        ge1_implies_ge2_sweep(special_linear(3), FieldSpec(3), random.Random(0), samples=5)
