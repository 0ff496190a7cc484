import random
from itertools import product
from fractions import Fraction

import pytest

from tameforge.lattice import (
    in_rational_span,
    integer_inverse,
    intersect_subspaces,
    invariant_subspace,
    rational_coordinates,
    rational_rank,
    solve_congruences,
    torsion_order,
)


def test_torsion_order_of_root_lattice():
    # A2 roots in weight coordinates: the quotient has order 3
    assert torsion_order([[2, -1], [-1, 2]]) == 3
    assert torsion_order([[1, 0], [0, 1]]) == 1


def test_span_membership():
    rows = [[1, 1, 0]]
    assert in_rational_span([2, 2, 0], rows, 3)
    assert not in_rational_span([1, 0, 0], rows, 3)
    assert in_rational_span([0, 0, 0], [], 3)
    assert rational_rank([[1, 2], [2, 4]], 2) == 1


def test_invariant_subspace_of_swap():
    swap = [[0, 1], [1, 0]]
    basis = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    fixed = invariant_subspace(basis, [swap], 2)
    assert len(fixed) == 1
    assert fixed[0][0] == fixed[0][1]


def test_intersection_of_lines():
    a = [[Fraction(1), Fraction(0)]]
    b = [[Fraction(1), Fraction(1)]]
    assert intersect_subspaces(a, b, 2) == []
    assert len(intersect_subspaces(a, [[Fraction(2), Fraction(0)]], 2)) == 1


def test_integer_inverse_requires_unimodular():
    assert integer_inverse([[1, 1], [0, 1]]) == [[1, -1], [0, 1]]
    with pytest.raises(ValueError):
        integer_inverse([[2, 0], [0, 1]])


def test_rational_coordinates():
    assert rational_coordinates([3, 1], [[1, 1], [1, -1]]) == [Fraction(2), Fraction(1)]
    assert rational_coordinates([0, 0, 1], [[1, 0, 0]]) is None


def test_congruence_with_non_unit_coefficient():
    solved = solve_congruences([[2]], [4], 6, 1)
    assert solved.count == 2
    assert sorted(solved) == [(2,), (5,)]
    assert solve_congruences([[2]], [1], 6, 1) is None


def test_congruence_free_variables():
    solved = solve_congruences([[1, 1]], [1], 3, 2)
    assert sorted(solved) == [(0, 1), (1, 0), (2, 2)]
    assert solve_congruences([], [], 4, 2).count == 16
    assert solve_congruences([[0, 0]], [1], 4, 2) is None


@pytest.mark.parametrize("seed", range(8))
def test_congruences_match_exhaustive_search(seed):
    rng = random.Random(seed)
    modulus = rng.choice([4, 6, 12])
    n_cols = rng.randint(1, 3)
    rows = [[rng.randint(-5, 5) for _ in range(n_cols)] for _ in range(rng.randint(1, 5))]
    truth = tuple(rng.randrange(modulus) for _ in range(n_cols))
    rhs = [sum(a * x for a, x in zip(row, truth)) % modulus for row in rows]
    expected = {
        x
        for x in product(range(modulus), repeat=n_cols)
        if all((sum(a * v for a, v in zip(row, x)) - b) % modulus == 0 for row, b in zip(rows, rhs))
    }
    solved = solve_congruences(rows, rhs, modulus, n_cols)
    found = list(solved)
    assert len(found) == solved.count
    assert set(found) == expected
