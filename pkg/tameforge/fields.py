"""Finite-field helpers on top of the galois library.

Field elements cross module boundaries as plain ints in galois' integer
representation (polynomial basis evaluated at p), so reports and hashes
never depend on array types.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import galois
import numpy as np
from sympy.ntheory import divisors, factorint, isprime

from tameforge.errors import EvenPrime, FieldCharacteristicZero, InvalidInput, TooLarge

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldSpec:
    """The finite field F_{p^m}."""

    p: int
    m: int = 1

    def __post_init__(self) -> None:
        if self.p == 0:
            raise FieldCharacteristicZero("A finite field F_{p^m} is required, got characteristic 0")
        if self.p < 0 or not isprime(self.p):
            raise InvalidInput(f"Field characteristic {self.p} is not prime")
        if self.m < 1:
            raise InvalidInput(f"Field degree must be >= 1, got {self.m}")

    @property
    def order(self) -> int:
        return self.p**self.m

    def field(self) -> type:
        return finite_field(self.order)

    def doubled(self) -> "FieldSpec":
        return FieldSpec(self.p, 2 * self.m)

    def require_odd(self) -> "FieldSpec":
        if self.p == 2:
            raise EvenPrime("Residue characteristic 2 is excluded")
        return self

    def check_bound(self, max_order: int) -> "FieldSpec":
        if self.order > max_order:
            raise TooLarge(
                f"Field of order {self.order} exceeds the bound {max_order}",
                {"order": self.order, "bound": max_order},
            )
        return self

    def to_list(self) -> List[int]:
        return [self.p, self.m]


def parse_field(text: str) -> FieldSpec:
    """Parse "p,m" (or "p") into a FieldSpec."""
    parts = [part.strip() for part in str(text).split(",") if part.strip()]
    if not parts or len(parts) > 2:
        raise InvalidInput(f"Field must be given as p,m: {text!r}")
    try:
        values = [int(part) for part in parts]
    except ValueError as exc:
        raise InvalidInput(f"Field must be given as p,m: {text!r}") from exc
    return FieldSpec(*values)


def prime_power(q: int) -> Tuple[int, int]:
    """Return (p, m) with q = p^m, or raise InvalidInput."""
    if q < 2:
        raise InvalidInput(f"{q} is not a prime power")
    factors = factorint(q)
    if len(factors) != 1:
        raise InvalidInput(f"{q} is not a prime power")
    ((p, m),) = factors.items()
    return int(p), int(m)


@lru_cache(maxsize=None)
def finite_field(order: int) -> type:
    prime_power(order)
    return galois.GF(order)


def reduce_ints(values: Sequence[int], p: int) -> List[int]:
    """Integers mapped into the prime subfield."""
    return [int(v) % p for v in values]


def to_field_codes(spec: FieldSpec, values: Sequence[int]) -> List[int]:
    """Integer codes of field elements.

    Over a prime field any integer is reduced mod p. Over F_{p^m} with m > 1
    values are codes in [0, q); a negative value -c stands for minus code c.
    """
    if spec.m == 1:
        return reduce_ints(values, spec.p)
    field = spec.field()
    codes = []
    for value in values:
        value = int(value)
        if abs(value) >= spec.order:
            raise InvalidInput(f"{value} is not an element code of F_{spec.order}")
        codes.append(int(-field(-value)) if value < 0 else value)
    return codes


def field_array(field: type, rows: Sequence[Sequence[int]]) -> "galois.FieldArray":
    return field(np.array(rows, dtype=np.int64).reshape(len(rows), -1))


def solve_affine(
    field: type,
    matrix: Sequence[Sequence[int]],
    rhs: Sequence[int],
    n_cols: int,
) -> Tuple[Optional[List[int]], int]:
    """Solve matrix @ x = rhs over the field.

    Returns (solution with free variables set to 0, rank), or (None, rank) when
    the system is inconsistent.
    """
    if not matrix:
        return [0] * n_cols, 0
    augmented = field_array(field, [list(row) + [value] for row, value in zip(matrix, rhs)])
    reduced = augmented.row_reduce()
    solution = [0] * n_cols
    rank = 0
    for row in np.asarray(reduced, dtype=np.int64).tolist():
        pivot = next((idx for idx, value in enumerate(row) if value), None)
        if pivot is None:
            continue
        if pivot == n_cols:
            return None, rank
        solution[pivot] = row[n_cols]
        rank += 1
    return solution, rank


def null_space(field: type, matrix: Sequence[Sequence[int]], n_cols: int) -> List[List[int]]:
    """Basis (as int rows) of {x : matrix @ x = 0}."""
    if not matrix:
        return [[1 if i == j else 0 for j in range(n_cols)] for i in range(n_cols)]
    basis = field_array(field, matrix).null_space()
    return [list(map(int, row)) for row in np.asarray(basis, dtype=np.int64).tolist()]


def rank(field: type, matrix: Sequence[Sequence[int]]) -> int:
    if not matrix or not matrix[0]:
        return 0
    return int(np.linalg.matrix_rank(field_array(field, matrix)))


def determinant(field: type, matrix: Sequence[Sequence[int]]) -> int:
    if not matrix:
        return 1
    return int(np.linalg.det(field_array(field, matrix)))


@lru_cache(maxsize=None)
def field_embedding(small_order: int, large_order: int) -> Tuple[int, ...]:
    """Images of the elements of F_small inside F_large (by integer code).

    The generator of the small field's polynomial basis is sent to the least
    root of its defining polynomial in the large field.
    """
    small = finite_field(small_order)
    large = finite_field(large_order)
    p = small.characteristic
    if large.characteristic != p or large.degree % small.degree:
        raise InvalidInput(f"F_{small_order} does not embed in F_{large_order}")
    if small.degree == 1:
        return tuple(range(p))
    coeffs = [int(c) for c in small.irreducible_poly.coeffs]
    roots = galois.Poly(large(coeffs), field=large).roots()
    beta = large(min(int(r) for r in roots))
    powers = [large(1)]
    for _ in range(small.degree - 1):
        powers.append(powers[-1] * beta)
    images = []
    for code in range(small.order):
        total = large(0)
        digits = code
        for power in powers:
            digits, digit = divmod(digits, p)
            if digit:
                total = total + large(digit) * power
        images.append(int(total))
    return tuple(images)


def generated_subfield_degree(spec: FieldSpec, values: Sequence[int]) -> int:
    """Least d dividing m with every value in F_{p^d}, i.e. the degree of the field they generate."""
    if not values:
        return 1
    elements = spec.field()(to_field_codes(spec, values))
    for d in divisors(spec.m):
        if bool(np.all(elements ** (spec.p**d) == elements)):
            return int(d)
    return spec.m


class FieldTables:
    """Lookup tables for arithmetic in a small F_q by integer code."""

    def __init__(self, q: int) -> None:
        self.q = q
        self.p, self.m = prime_power(q)
        self.field = finite_field(q)
        elements = self.field.elements
        self.add = np.asarray(elements[:, None] + elements[None, :], dtype=np.int64).tolist()
        self.mul = np.asarray(elements[:, None] * elements[None, :], dtype=np.int64).tolist()
        self.neg = [int(v) for v in np.asarray(-elements, dtype=np.int64)]
        self.inv = [0] + [int(v) for v in np.asarray(elements[1:] ** -1, dtype=np.int64)]
        squares = {self.mul[x][x] for x in range(1, q)}
        self.nonsquares = tuple(x for x in range(1, q) if x not in squares)
        self.squares = frozenset(squares)
        self.primitive = int(self.field.primitive_element)

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]

    def from_int(self, value: int) -> int:
        """Image of an integer in the prime subfield."""
        return value % self.p

    def is_square(self, value: int) -> bool:
        return value == 0 or value in self.squares

    @property
    def first_nonsquare(self) -> int:
        return self.nonsquares[0]


@lru_cache(maxsize=None)
def field_tables(q: int) -> FieldTables:
    return FieldTables(q)
