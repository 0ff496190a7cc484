"""Exact integer and rational linear algebra on coordinate lattices."""

from __future__ import annotations

from fractions import Fraction
from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Iterator, List, Optional, Sequence, Tuple

import sympy
from sympy import ZZ
from sympy.polys.matrices import DM
from sympy.polys.matrices.normalforms import invariant_factors

Vector = Tuple[int, ...]


def _matrix(rows: Sequence[Sequence[int]], n_cols: int) -> sympy.Matrix:
    if not rows:
        return sympy.zeros(0, n_cols)
    return sympy.Matrix([list(row) for row in rows])


def rational_rank(rows: Sequence[Sequence[int]], n_cols: int) -> int:
    if not rows:
        return 0
    return int(_matrix(rows, n_cols).rank())


def in_rational_span(vector: Sequence[int], rows: Sequence[Sequence[int]], n_cols: int, base_rank: int | None = None) -> bool:
    """True iff vector lies in the Q-span of rows."""
    if not any(vector):
        return True
    if not rows:
        return False
    r = rational_rank(rows, n_cols) if base_rank is None else base_rank
    return rational_rank(list(rows) + [list(vector)], n_cols) == r


def nonzero_invariant_factors(rows: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero invariant factors (Smith normal form diagonal) of an integer matrix."""
    if not rows or not rows[0]:
        return []
    factors = invariant_factors(DM([list(map(int, row)) for row in rows], ZZ))
    return [abs(int(f)) for f in factors if int(f) != 0]


def torsion_order(rows: Sequence[Sequence[int]]) -> int:
    """Order of the torsion subgroup of Z^n / (row lattice)."""
    order = 1
    for factor in nonzero_invariant_factors(rows):
        order *= factor
    return order


def rational_null_space(rows: Sequence[Sequence[int | Fraction]], n_cols: int) -> List[List[Fraction]]:
    """Basis of {x in Q^n : rows @ x = 0}."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(n_cols)] for i in range(n_cols)]
    matrix = sympy.Matrix([[sympy.Rational(str(v)) for v in row] for row in rows])
    return [[Fraction(str(entry)) for entry in vec] for vec in matrix.nullspace()]


def rational_column_basis(vectors: Sequence[Sequence[int | Fraction]], n_cols: int) -> List[List[Fraction]]:
    """A basis of the Q-span of the given vectors (as rows)."""
    if not vectors:
        return []
    matrix = sympy.Matrix([[sympy.Rational(str(v)) for v in vec] for vec in vectors])
    reduced, pivots = matrix.T.rref()
    return [[Fraction(str(entry)) for entry in matrix.row(i)] for i in pivots]


def invariant_subspace(
    basis: Sequence[Sequence[Fraction]],
    operators: Sequence[Sequence[Sequence[int | Fraction]]],
    n_cols: int,
) -> List[List[Fraction]]:
    """Vectors of span(basis) fixed by every operator (matrices acting on columns)."""
    if not basis:
        return []
    b = sympy.Matrix([[sympy.Rational(str(v)) for v in vec] for vec in basis]).T
    blocks = []
    for op in operators:
        g = sympy.Matrix([[sympy.Rational(str(v)) for v in row] for row in op])
        blocks.append((g - sympy.eye(n_cols)) * b)
    if not blocks:
        return [list(vec) for vec in basis]
    stacked = sympy.Matrix.vstack(*blocks)
    coefficients = stacked.nullspace()
    return [[Fraction(str(entry)) for entry in (b * c)] for c in coefficients]


def intersect_subspaces(
    first: Sequence[Sequence[Fraction]],
    second: Sequence[Sequence[Fraction]],
    n_cols: int,
) -> List[List[Fraction]]:
    """Basis of span(first) intersected with span(second)."""
    if not first or not second:
        return []
    a = sympy.Matrix([[sympy.Rational(str(v)) for v in vec] for vec in first]).T
    b = sympy.Matrix([[sympy.Rational(str(v)) for v in vec] for vec in second]).T
    kernel = sympy.Matrix.hstack(a, -b).nullspace()
    vectors = [a * k[: a.shape[1], :] for k in kernel]
    if not vectors:
        return []
    return rational_column_basis([[Fraction(str(e)) for e in v] for v in vectors], n_cols)


def integer_inverse(matrix: Sequence[Sequence[int]]) -> List[List[int]]:
    """Inverse of a unimodular integer matrix."""
    m = sympy.Matrix([list(row) for row in matrix])
    det = m.det()
    if det not in (1, -1):
        raise ValueError(f"Matrix is not unimodular (det {det})")
    inv = m.inv()
    return [[int(inv[i, j]) for j in range(inv.shape[1])] for i in range(inv.shape[0])]


def mat_vec(matrix: Sequence[Sequence[int]], vector: Sequence[int]) -> Vector:
    return tuple(sum(a * b for a, b in zip(row, vector)) for row in matrix)


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Tuple[Vector, ...]:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def transpose(matrix: Sequence[Sequence[int]]) -> Tuple[Vector, ...]:
    return tuple(tuple(col) for col in zip(*matrix))


def identity(n: int) -> Tuple[Vector, ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def rational_coordinates(vector: Sequence[int], basis: Sequence[Sequence[int]]) -> List[Fraction] | None:
    """Coefficients c with sum c_i basis_i = vector, or None outside the span.

    The basis rows must be linearly independent.
    """
    if not basis:
        return [] if not any(vector) else None
    b = sympy.Matrix([list(row) for row in basis]).T
    target = sympy.Matrix(list(vector))
    try:
        solution, params = b.gauss_jordan_solve(target)
    except ValueError:
        return None
    return [Fraction(str(entry)) for entry in solution]


def diagonalize(
    rows: Sequence[Sequence[int]],
    rhs: Sequence[int],
    n_cols: int,
) -> Tuple[List[int], List[int], List[List[int]]]:
    """Unimodular row and column operations taking rows to diagonal form.

    Returns (diagonal, transformed rhs, V) with x = V z turning rows @ x = rhs
    into d_i z_i = rhs'_i for i < len(diagonal) and 0 = rhs'_i below.
    """
    a = [list(map(int, row)) for row in rows]
    b = list(map(int, rhs))
    v = [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]
    m = len(a)
    diagonal: List[int] = []

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for t in range(min(m, n_cols)):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n_cols) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        a[t], a[i] = a[i], a[t]
        b[t], b[i] = b[i], b[t]
        swap_cols(t, j)
        while True:
            pivot = a[t][t]
            for i in range(t + 1, m):
                q = a[i][t] // pivot
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    b[i] -= q * b[t]
            for j in range(t + 1, n_cols):
                q = a[t][j] // pivot
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
            rest = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
            rest += [(abs(a[t][j]), t, j) for j in range(t + 1, n_cols) if a[t][j]]
            if not rest:
                break
            _, i, j = min(rest)
            if j == t:
                a[t], a[i] = a[i], a[t]
                b[t], b[i] = b[i], b[t]
            else:
                swap_cols(t, j)
        diagonal.append(a[t][t])
    return diagonal, b, v


@dataclass(frozen=True)
class CongruenceSolutions:
    """All x in (Z/N)^n with rows @ x = rhs (mod N): x = V z, z_i = offset_i + k * step_i."""

    modulus: int
    right: Tuple[Vector, ...]
    offsets: Tuple[int, ...]
    steps: Tuple[int, ...]
    counts: Tuple[int, ...]

    @property
    def count(self) -> int:
        total = 1
        for c in self.counts:
            total *= c
        return total

    def __iter__(self) -> Iterator[Vector]:
        n = self.modulus
        for ks in product(*(range(c) for c in self.counts)):
            z = [o + k * s for o, k, s in zip(self.offsets, ks, self.steps)]
            yield tuple(sum(vij * zj for vij, zj in zip(row, z)) % n for row in self.right)


def solve_congruences(
    rows: Sequence[Sequence[int]],
    rhs: Sequence[int],
    modulus: int,
    n_cols: int,
) -> Optional[CongruenceSolutions]:
    """Solution set of rows @ x = rhs over Z/modulus, or None if it is empty."""
    diagonal, b, v = diagonalize(rows, rhs, n_cols)
    if any(value % modulus for value in b[len(diagonal):]):
        return None
    offsets, steps, counts = [], [], []
    for d, value in zip(diagonal, b):
        g = gcd(d, modulus)
        if value % g:
            return None
        reduced = modulus // g
        offsets.append((value // g) * pow(d // g, -1, reduced) % reduced if reduced > 1 else 0)
        steps.append(reduced)
        counts.append(g)
    for _ in range(len(diagonal), n_cols):
        offsets.append(0)
        steps.append(1)
        counts.append(modulus)
    return CongruenceSolutions(
        modulus,
        tuple(tuple(row) for row in v),
        tuple(offsets),
        tuple(steps),
        tuple(counts),
    )
