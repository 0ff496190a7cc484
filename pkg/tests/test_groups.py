from itertools import permutations

import pytest

from tameforge.cyclotomic import Cyclotomic, CyclotomicMatrix
from tameforge.errors import ClosureBoundExceeded, GroupMismatch, NotARepresentation, NotASubgroup
from tameforge.groups import (
    ClassFunction,
    FiniteGroup,
    LinearRep,
    character_pairing,
    close_under,
    induce_rep,
    regular_character,
    trivial_character,
)


def compose(p, q):
    return tuple(p[i] for i in q)


def invert(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


@pytest.fixture
def s3():
    return FiniteGroup(permutations(range(3)), compose, invert, (0, 1, 2), "S3")


@pytest.fixture
def a3(s3):
    return s3.subgroup([(0, 1, 2), (1, 2, 0), (2, 0, 1)], "A3")


def sign(p):
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inversions % 2 else 1


def test_close_under_generates_s3():
    elements = close_under([(1, 0, 2), (1, 2, 0)], compose, (0, 1, 2), 10)
    assert len(elements) == 6
    with pytest.raises(ClosureBoundExceeded):
        close_under([(1, 0, 2), (1, 2, 0)], compose, (0, 1, 2), 4)


def test_conjugacy_classes_and_center(s3):
    sizes = sorted(len(c) for c in s3.conjugacy_classes)
    assert sizes == [1, 2, 3]
    assert s3.center() == ((0, 1, 2),)


def test_subgroup_checks(s3):
    assert s3.is_subgroup([(0, 1, 2), (1, 0, 2)])
    with pytest.raises(NotASubgroup):
        s3.subgroup([(0, 1, 2), (1, 2, 0)])
    assert len(s3.left_coset_representatives([(0, 1, 2), (1, 0, 2)])) == 3


def test_orthogonality_of_irreducibles(s3):
    trivial = trivial_character(s3)
    sgn = ClassFunction.from_function(s3, lambda p: Cyclotomic.rational(sign(p)), verify=True)
    assert character_pairing(trivial, trivial) == 1
    assert character_pairing(sgn, sgn) == 1
    assert character_pairing(trivial, sgn) == 0
    assert character_pairing(regular_character(s3), trivial) == 1


def test_induced_trivial_from_a3(s3, a3):
    rep = LinearRep(a3, {g: CyclotomicMatrix.identity(1) for g in a3})
    induced = induce_rep(s3, a3.elements, rep)
    induced.check_multiplicative()
    chi = induced.character()
    assert chi.degree == 2
    assert character_pairing(chi, chi) == 2
    assert chi((1, 0, 2)) == 0


def test_non_multiplicative_images_rejected(s3):
    images = {g: CyclotomicMatrix.identity(1) for g in s3}
    images[(1, 0, 2)] = CyclotomicMatrix.scalar(1, Cyclotomic.rational(-1))
    with pytest.raises(NotARepresentation):
        LinearRep(s3, images)


def test_pairing_across_groups_rejected(s3, a3):
    with pytest.raises(GroupMismatch):
        character_pairing(trivial_character(s3), trivial_character(a3))


def test_generating_set_reaches_the_group(s3):
    gens = s3.generating_set()
    assert len(gens) <= 2
    assert s3.generated_subgroup(gens).order == 6


def test_induction_rejects_non_multiplicative_images(s3, a3):
    zeta = Cyclotomic.root_of_unity(3)
    images = {g: CyclotomicMatrix.scalar(1, zeta) for g in a3}
    images[a3.identity] = CyclotomicMatrix.identity(1)
    rep = LinearRep(a3, images, check=False)
    with pytest.raises(NotARepresentation):
        induce_rep(s3, a3.elements, rep)
