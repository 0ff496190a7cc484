import pytest

from tameforge.cyclotomic import Cyclotomic
from tameforge.errors import EvenPrime, NotAPolarization, NotSymplectic, TooLarge
from tameforge.groups import character_pairing
from tameforge.heisenberg import (
    HeisenbergGroup,
    Polarization,
    SymplecticSpaceFp,
    build_heisenberg_rep,
    check_covariance,
    check_homomorphism,
    gauss_sum,
    heisenberg_rep_by_induction,
    image_of_s_minus_one,
    symplectic_subgroup,
    weil_extend,
    weil_scalar,
    weil_trace_support,
)
from tameforge.serialization import load_json


@pytest.fixture(scope="module")
def space3():
    return SymplecticSpaceFp.standard(3, 1)


@pytest.fixture(scope="module")
def weil3(space3):
    rep = build_heisenberg_rep(space3)
    return weil_extend(rep, space3.default_generators())


def test_form_validation():
    with pytest.raises(NotSymplectic):
        SymplecticSpaceFp(3, ((1, 0), (0, 1)))
    with pytest.raises(NotSymplectic):
        SymplecticSpaceFp(3, ((0, 0), (0, 0)))
    with pytest.raises(NotSymplectic):
        SymplecticSpaceFp(3, ((0, 1, 0), (2, 0, 0), (0, 0, 0)))
    with pytest.raises(EvenPrime):
        SymplecticSpaceFp.standard(2, 1)


def test_commutator_is_central(space3):
    heisenberg = HeisenbergGroup(space3)
    e, f = ((1, 0), 0), ((0, 1), 0)
    assert heisenberg.commutator(e, f) == heisenberg.central(1)
    assert heisenberg.group.order == 27
    assert len(heisenberg.group.center()) == 3


def test_transvections_are_symplectic(space3):
    for s in space3.default_generators():
        assert space3.is_symplectic(s)


@pytest.mark.parametrize("p, n", [(3, 1), (5, 1), (3, 2)])
def test_heisenberg_rep_is_irreducible(p, n):
    space = SymplecticSpaceFp.standard(p, n)
    rep = build_heisenberg_rep(space)
    chi = rep.character()
    assert rep.dimension == p**n
    assert character_pairing(chi, chi) == 1
    assert chi(rep.heisenberg.central(1)) == Cyclotomic.root_of_unity(p).scale(p**n)
    assert chi(((1,) + (0,) * (2 * n - 1), 0)) == 0


@pytest.mark.parametrize("p, n", [(3, 1), (3, 2), (5, 1)])
def test_polarizations_give_isomorphic_reps(p, n):
    space = SymplecticSpaceFp.standard(p, n)
    rep = build_heisenberg_rep(space)
    other = build_heisenberg_rep(space, Polarization.standard(space).swapped())
    chi, chi_other = rep.character(), other.character()
    assert chi == chi_other
    assert character_pairing(chi, chi_other) == 1


def test_schroedinger_model_matches_induction(space3):
    rep = build_heisenberg_rep(space3)
    induced = heisenberg_rep_by_induction(rep.heisenberg, Polarization.standard(space3))
    assert induced.character() == rep.character()


def test_bad_polarization(space3):
    with pytest.raises(NotAPolarization):
        build_heisenberg_rep(space3, Polarization(((1, 0),), ((2, 0),)))


def test_group_bound(space3):
    with pytest.raises(TooLarge):
        build_heisenberg_rep(space3, bound=10)


def test_gauss_sum_normalization():
    for p in (3, 5, 7):
        g = gauss_sum(p)
        sign = 1 if p % 4 == 1 else -1
        assert g * g == sign * p
        scalar = weil_scalar(p)
        assert scalar * scalar == Cyclotomic.rational(1) / p


def test_weil_extension_on_sl2_f3(weil3):
    assert weil3.group.order == 24
    assert weil3.canonical_lift
    check_covariance(weil3)
    check_homomorphism(weil3)
    chi = weil3.character()
    assert chi.degree == 3
    # splits as (p + 1)/2 + (p - 1)/2
    assert character_pairing(chi, chi) == 2


def test_trace_support_is_image_of_s_minus_one(weil3, space3):
    for s in weil3.group.elements:
        assert weil_trace_support(weil3, s) == image_of_s_minus_one(space3, s)


def test_two_generator_presentation(space3, data_dir):
    generators = load_json(data_dir / "sp2_generators.json")
    weil = weil_extend(build_heisenberg_rep(space3), generators)
    assert weil.group.order == 24
    check_homomorphism(weil)


def test_non_symplectic_generator(space3, malformed_dir):
    with pytest.raises(NotSymplectic):
        symplectic_subgroup(space3, load_json(malformed_dir / "not_symplectic.json"))


def test_cocycle_search_bound(space3):
    with pytest.raises(TooLarge):
        weil_extend(build_heisenberg_rep(space3), space3.default_generators(), search_bound=2)


@pytest.mark.slow
def test_weil_extension_on_sl2_f5():
    space = SymplecticSpaceFp.standard(5, 1)
    weil = weil_extend(build_heisenberg_rep(space), [((1, 1), (0, 1)), ((1, 0), (1, 1))])
    assert weil.group.order == 120
    assert not weil.canonical_lift
    check_covariance(weil, weil.rep.heisenberg.generators())
    chi = weil.character()
    assert character_pairing(chi, chi) == 2


def test_redundant_generator_gives_same_extension(space3, weil3):
    generators = space3.default_generators()
    weil = weil_extend(build_heisenberg_rep(space3), generators + [generators[0]])
    assert weil.group.order == 24
    assert weil.solutions == weil3.solutions == 3
    assert weil.generator_exponents[-1] == weil.generator_exponents[0]
    assert weil.generator_exponents[:-1] == weil3.generator_exponents
    assert weil.images == weil3.images
    check_covariance(weil, weil.rep.heisenberg.generators())
    check_homomorphism(weil)


@pytest.mark.slow
def test_sl2_f5_with_redundant_generator_is_solved_linearly():
    space = SymplecticSpaceFp.standard(5, 1)
    generators = space.default_generators()
    weil = weil_extend(build_heisenberg_rep(space), generators + [generators[0]])
    assert weil.group.order == 120
    assert weil.level == 60
    # SL2(F_5) is perfect, so the trivialization is unique
    assert weil.solutions == 1
    check_covariance(weil, weil.rep.heisenberg.generators())
