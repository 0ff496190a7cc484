import pytest

from tameforge.cyclotomic import Cyclotomic, CyclotomicMatrix
from tameforge.distinction import (
    EllipticTorusLog,
    Involution,
    borel_subgroup,
    build_group_gl2,
    build_group_sl2,
    center,
    diagonal_torus,
    cuspidal_character,
    cuspidal_parameters,
    epsilon_character,
    fixed_lie_algebra,
    fixed_points,
    frobenius_induce,
    involution_orbits,
    make_involution,
    nonsplit_torus,
    preserves,
    swap_distinction_multiplicity,
    theorem_sides,
    unipotent_subgroup,
)
from tameforge.errors import (
    InvalidInput,
    NotAnInvolution,
    NotGeneralPosition,
    SupportNotInK,
    TheoremViolation,
    ThetaDoesNotPreserveL,
    TooLarge,
)
from tameforge.groups import LinearRep, character_pairing, induce_rep, trivial_character


@pytest.fixture(scope="module")
def gl2_3():
    return build_group_gl2(3)


@pytest.fixture(scope="module")
def torus_3(gl2_3):
    return nonsplit_torus(gl2_3)


def _orbit_of(orbits, theta):
    return next(orbit for orbit in orbits if theta in orbit.members)


def test_group_orders(gl2_3):
    assert gl2_3.order == 48
    assert build_group_sl2(3).order == 24
    assert len(center(gl2_3)) == 2
    assert gl2_3.is_subgroup(borel_subgroup(gl2_3))


def test_group_size_guards():
    with pytest.raises(InvalidInput):
        build_group_gl2(4, allowed=(4,))
    with pytest.raises(TooLarge):
        build_group_gl2(11)
    with pytest.raises(TooLarge):
        build_group_gl2(5, bound=100)


def test_nonsplit_torus_is_cyclic(gl2_3, torus_3):
    assert len(torus_3) == 8
    assert gl2_3.is_subgroup(torus_3)
    log = EllipticTorusLog(gl2_3)
    assert sorted(log.log.values()) == list(range(8))


def test_cuspidal_parameters():
    assert cuspidal_parameters(3) == [1, 2, 5]
    assert len(cuspidal_parameters(5)) == 10


def test_cuspidal_characters_are_distinct_irreducibles(gl2_3):
    characters = [cuspidal_character(gl2_3, k) for k in cuspidal_parameters(3)]
    for i, chi in enumerate(characters):
        assert chi.degree == 2
        for other in characters[i + 1 :]:
            assert character_pairing(chi, other) == 0


def test_frobenius_twist_gives_same_character(gl2_3):
    assert cuspidal_character(gl2_3, 1) == cuspidal_character(gl2_3, 3)


def test_general_position_required(gl2_3):
    with pytest.raises(NotGeneralPosition):
        cuspidal_character(gl2_3, 4)


def test_involution_validation(gl2_3):
    with pytest.raises(NotAnInvolution):
        make_involution(gl2_3, "inner", (1, 1, 0, 1))
    with pytest.raises(NotAnInvolution):
        make_involution(gl2_3, "inner", (2, 0, 0, 2))
    with pytest.raises(NotAnInvolution):
        make_involution(gl2_3, "outer", (1, 1, 0, 1))
    with pytest.raises(InvalidInput):
        make_involution(gl2_3, "other", (1, 0, 0, 2))
    with pytest.raises(InvalidInput):
        make_involution(gl2_3, "inner", (1, 1, 1, 1))


def test_fixed_points_and_lie_algebras(gl2_3):
    split = make_involution(gl2_3, "inner", (1, 0, 0, 2))
    symplectic = make_involution(gl2_3, "outer", (0, 1, 2, 0))
    assert len(fixed_points(gl2_3, split)) == 4
    assert len(fixed_points(gl2_3, symplectic)) == 24
    assert len(fixed_lie_algebra(gl2_3, split)) == 2
    assert len(fixed_lie_algebra(gl2_3, symplectic)) == 3


def test_involution_orbits(gl2_3):
    orbits = involution_orbits(gl2_3)
    assert len(orbits) == 5
    for orbit in orbits:
        assert len(orbit.members) * orbit.stabilizer_order == gl2_3.order
        assert orbit.stabilizer_order % orbit.fixed_order == 0


def test_epsilon_character(gl2_3, torus_3):
    split = make_involution(gl2_3, "inner", (1, 0, 0, 2))
    assert preserves(gl2_3, split, torus_3)
    eps = epsilon_character(gl2_3, split, torus_3)
    assert eps.group.order == 2
    assert all(value in (Cyclotomic.one(), -Cyclotomic.one()) for value in eps.values)
    bad = make_involution(gl2_3, "inner", (1, 1, 0, 2))
    with pytest.raises(ThetaDoesNotPreserveL):
        epsilon_character(gl2_3, bad, torus_3)


@pytest.mark.parametrize("k, expected", [(1, 0), (2, 1)])
def test_split_inner_involution_anchor(gl2_3, torus_3, k, expected):
    orbits = involution_orbits(gl2_3)
    orbit = _orbit_of(orbits, Involution("inner", (1, 0, 0, 2)))
    sides = theorem_sides(gl2_3, orbit, torus_3, k)
    assert sides.lhs == sides.rhs == expected


def test_multiplicity_formula_for_every_orbit(gl2_3, torus_3):
    orbits = involution_orbits(gl2_3)
    for k in cuspidal_parameters(3):
        character = cuspidal_character(gl2_3, k)
        for orbit in orbits:
            sides = theorem_sides(gl2_3, orbit, torus_3, k, character)
            assert sides.lhs == sides.rhs
            assert sides.rhs == sum(term.m_L * term.pairing for term in sides.orbits if term.selected)


def test_symplectic_periods_vanish(gl2_3, torus_3):
    orbits = involution_orbits(gl2_3)
    orbit = _orbit_of(orbits, Involution("outer", (0, 1, 2, 0)))
    for k in cuspidal_parameters(3):
        assert theorem_sides(gl2_3, orbit, torus_3, k).lhs == 0


def test_injected_violation_raises(gl2_3, torus_3):
    orbit = involution_orbits(gl2_3)[0]
    with pytest.raises(TheoremViolation):
        theorem_sides(gl2_3, orbit, torus_3, 1, inject_violation=True)


def test_frobenius_induction(gl2_3):
    borel = borel_subgroup(gl2_3)
    induced = frobenius_induce(gl2_3, borel, {b: Cyclotomic.one() for b in borel})
    assert induced.degree == 4
    assert character_pairing(induced, trivial_character(gl2_3)) == 1
    from_center = frobenius_induce(gl2_3, center(gl2_3), {z: Cyclotomic.one() for z in center(gl2_3)})
    assert character_pairing(from_center, trivial_character(gl2_3)) == 1


def _special_linear(G):
    return [g for g in G.elements if G.det(g) == 1]


@pytest.mark.parametrize(
    "subgroup",
    [center, borel_subgroup, unipotent_subgroup, diagonal_torus, nonsplit_torus, _special_linear],
    ids=lambda f: f.__name__.strip("_"),
)
@pytest.mark.parametrize("twisted", [False, True], ids=["trivial", "det_sign"])
def test_frobenius_formula_matches_induced_representation(gl2_3, subgroup, twisted):
    members = subgroup(gl2_3)
    K = gl2_3.sub_table(members, subgroup.__name__)

    def chi_dot(k):
        return Cyclotomic.rational(-1 if twisted and gl2_3.det(k) == gl2_3.minus_one else 1)

    rep = LinearRep(K, {k: CyclotomicMatrix.scalar(1, chi_dot(k)) for k in K.elements})
    expected = induce_rep(gl2_3, K.elements, rep).character()
    formula = frobenius_induce(gl2_3, members, {k: chi_dot(k) for k in members})
    assert formula == expected
    assert formula.degree == gl2_3.order // len(members)


def test_frobenius_induction_guards(gl2_3):
    borel = borel_subgroup(gl2_3)
    with pytest.raises(SupportNotInK):
        frobenius_induce(gl2_3, borel, {(0, 1, 1, 0): Cyclotomic.one()})
    with pytest.raises(InvalidInput):
        frobenius_induce(gl2_3, [(1, 0, 0, 1), (1, 1, 0, 1)], {})


def test_swap_involution_multiplicity(gl2_3):
    chi1 = cuspidal_character(gl2_3, 1)
    chi2 = cuspidal_character(gl2_3, 2)
    assert swap_distinction_multiplicity(gl2_3, chi1, chi1) == (1, 1)
    assert swap_distinction_multiplicity(gl2_3, chi1, chi2) == (0, 0)


@pytest.mark.slow
def test_multiplicity_formula_over_f5():
    G = build_group_gl2(5)
    L = nonsplit_torus(G)
    orbits = involution_orbits(G)
    assert len(orbits) == 5
    for k in cuspidal_parameters(5):
        character = cuspidal_character(G, k)
        for orbit in orbits:
            sides = theorem_sides(G, orbit, L, k, character)
            assert sides.lhs == sides.rhs
