"""Exact arithmetic in cyclotomic fields Q(zeta_N) and matrices over them.

An element of level N is stored by its rational coordinates in the power
basis 1, zeta, ..., zeta^(phi(N)-1) of a primitive N-th root of unity,
reduced modulo the N-th cyclotomic polynomial.  Mixed-level operations
promote both operands to the lcm of the levels.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy.ntheory import factorint

LOGGER = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _norm(value: Scalar) -> Scalar:
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value.numerator)
    return value


@lru_cache(maxsize=None)
def euler_phi(level: int) -> int:
    return int(sympy.totient(level))


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    exponents = factorint(n).values()
    if any(e > 1 for e in exponents):
        return 0
    return -1 if len(exponents) % 2 else 1


@lru_cache(maxsize=None)
def power_table(level: int) -> Tuple[Tuple[int, ...], ...]:
    """Reduced integer coordinates of zeta^j for j = 0, ..., level-1."""
    if level < 1:
        raise ValueError(f"Cyclotomic level must be >= 1, got {level}")
    x = sympy.Symbol("x")
    coeffs = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(level, x), x).all_coeffs())]
    degree = len(coeffs) - 1
    top = tuple(-c for c in coeffs[:degree])

    rows: List[Tuple[int, ...]] = []
    current = [0] * degree
    current[0] = 1
    for _ in range(level):
        rows.append(tuple(current))
        carry = current[-1]
        shifted = [0] + current[:-1]
        if carry:
            shifted = [s + carry * t for s, t in zip(shifted, top)]
        current = shifted
    return tuple(rows)


@lru_cache(maxsize=None)
def _units(level: int) -> Tuple[int, ...]:
    return tuple(a for a in range(1, max(level, 2)) if gcd(a, level) == 1)


def _as_scalar(value: object) -> Optional[Scalar]:
    if isinstance(value, bool):
        return None
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return _norm(value)
    if isinstance(value, Rational):
        return _norm(Fraction(int(value.numerator), int(value.denominator)))
    return None


class Cyclotomic:
    """An element of Q(zeta_N)."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs: Sequence[Scalar]) -> None:
        if level < 1:
            raise ValueError(f"Cyclotomic level must be >= 1, got {level}")
        if len(coeffs) != euler_phi(level):
            raise ValueError(
                f"Level {level} needs {euler_phi(level)} coefficients, got {len(coeffs)}"
            )
        self.level = level
        self.coeffs: Tuple[Scalar, ...] = tuple(_norm(Fraction(c) if not isinstance(c, int) else c) for c in coeffs)

    # constructors

    @classmethod
    def rational(cls, value: Scalar, level: int = 1) -> "Cyclotomic":
        coeffs: List[Scalar] = [0] * euler_phi(level)
        coeffs[0] = _norm(Fraction(value))
        return cls(level, coeffs)

    @classmethod
    def zero(cls, level: int = 1) -> "Cyclotomic":
        return cls(level, [0] * euler_phi(level))

    @classmethod
    def one(cls, level: int = 1) -> "Cyclotomic":
        return cls.rational(1, level)

    @classmethod
    def root_of_unity(cls, level: int, exponent: int = 1) -> "Cyclotomic":
        return cls(level, power_table(level)[exponent % level])

    @classmethod
    def from_exponent_counts(cls, level: int, counts: Union[Mapping[int, Scalar], Sequence[Scalar]]) -> "Cyclotomic":
        """Sum of count_e * zeta^e."""
        items = counts.items() if isinstance(counts, Mapping) else enumerate(counts)
        table = power_table(level)
        out: List[Scalar] = [0] * euler_phi(level)
        for exponent, count in items:
            if not count:
                continue
            for idx, v in enumerate(table[exponent % level]):
                if v:
                    out[idx] += count * v
        return cls(level, out)

    # structure

    def promote(self, level: int) -> "Cyclotomic":
        if level == self.level:
            return self
        if level % self.level:
            raise ValueError(f"Cannot promote level {self.level} to {level}")
        step = level // self.level
        table = power_table(level)
        out: List[Scalar] = [0] * euler_phi(level)
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            for idx, v in enumerate(table[(i * step) % level]):
                if v:
                    out[idx] += c * v
        return Cyclotomic(level, out)

    def galois(self, a: int) -> "Cyclotomic":
        """Image under the automorphism zeta -> zeta^a (a prime to the level)."""
        if gcd(a, self.level) != 1:
            raise ValueError(f"{a} is not a unit modulo {self.level}")
        table = power_table(self.level)
        out: List[Scalar] = [0] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            for idx, v in enumerate(table[(a * i) % self.level]):
                if v:
                    out[idx] += c * v
        return Cyclotomic(self.level, out)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.coeffs[0])

    def is_integer(self) -> bool:
        return self.is_rational() and Fraction(self.coeffs[0]).denominator == 1

    def mean_trace(self) -> Fraction:
        """Trace to Q divided by the degree; independent of the level."""
        total = Fraction(0)
        for i, c in enumerate(self.coeffs):
            if c:
                m = self.level // gcd(self.level, i)
                total += Fraction(c) * _mobius(m) / euler_phi(m)
        return total

    def root_exponent(self, level: int) -> Optional[int]:
        """Return e with self == zeta_level^e, or None."""
        common = _lcm(level, self.level)
        target = self.promote(common).coeffs
        table = power_table(common)
        step = common // level
        for e in range(level):
            if table[e * step] == target:
                return e
        return None

    # arithmetic

    def _align(self, other: object) -> Tuple["Cyclotomic", "Cyclotomic"]:
        if isinstance(other, Cyclotomic):
            if other.level == self.level:
                return self, other
            common = _lcm(self.level, other.level)
            return self.promote(common), other.promote(common)
        scalar = _as_scalar(other)
        if scalar is None:
            raise TypeError(f"Unsupported operand {other!r}")
        return self, Cyclotomic.rational(scalar, self.level)

    def __add__(self, other: object) -> "Cyclotomic":
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic(a.level, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.level, [-x for x in self.coeffs])

    def __sub__(self, other: object) -> "Cyclotomic":
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return Cyclotomic(a.level, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other: object) -> "Cyclotomic":
        return (-self) + other

    def scale(self, scalar: Scalar) -> "Cyclotomic":
        return Cyclotomic(self.level, [c * scalar for c in self.coeffs])

    def __mul__(self, other: object) -> "Cyclotomic":
        scalar = _as_scalar(other)
        if scalar is not None:
            return self.scale(scalar)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._align(other)
        return Cyclotomic(a.level, _multiply(a.level, a.coeffs, b.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_N)")
        if self.is_rational():
            return Cyclotomic.rational(1 / Fraction(self.coeffs[0]), self.level)
        cofactor = Cyclotomic.one(self.level)
        for a in _units(self.level)[1:]:
            cofactor = cofactor * self.galois(a)
        norm = (self * cofactor).to_fraction()
        return cofactor.scale(_norm(1 / norm))

    def __truediv__(self, other: object) -> "Cyclotomic":
        scalar = _as_scalar(other)
        if scalar is not None:
            if scalar == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(_norm(1 / Fraction(scalar)))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: object) -> "Cyclotomic":
        scalar = _as_scalar(other)
        if scalar is None:
            return NotImplemented
        return self.inverse().scale(scalar)

    def __pow__(self, exponent: int) -> "Cyclotomic":
        base = self if exponent >= 0 else self.inverse()
        result = Cyclotomic.one(self.level)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cyclotomic) and _as_scalar(other) is None:
            return NotImplemented
        a, b = self._align(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        return hash(self.mean_trace())

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        if self.is_rational():
            return f"Cyclotomic({self.coeffs[0]})"
        terms = [f"{c}*z{self.level}^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Cyclotomic(" + " + ".join(terms) + ")"


def _multiply(level: int, a: Sequence[Scalar], b: Sequence[Scalar]) -> List[Scalar]:
    degree = len(a)
    if degree == 1:
        return [a[0] * b[0]]
    conv: List[Scalar] = [0] * (2 * degree - 1)
    b_support = [(j, y) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in b_support:
            conv[i + j] += x * y
    out = conv[:degree]
    table = power_table(level)
    for k in range(degree, 2 * degree - 1):
        c = conv[k]
        if not c:
            continue
        for idx, v in enumerate(table[k % level]):
            if v:
                out[idx] += c * v
    return out


def common_level(values: Iterable[Cyclotomic]) -> int:
    level = 1
    for value in values:
        level = _lcm(level, value.level)
    return level


class CyclotomicMatrix:
    """Dense matrix with entries in Q(zeta_N), all stored at one level."""

    __slots__ = ("level", "rows")

    def __init__(self, rows: Sequence[Sequence[Cyclotomic]], level: Optional[int] = None) -> None:
        entries = [entry for row in rows for entry in row]
        resolved = level or common_level(entries)
        self.level = resolved
        self.rows: Tuple[Tuple[Cyclotomic, ...], ...] = tuple(
            tuple(entry.promote(_lcm(entry.level, resolved)) for entry in row) for row in rows
        )
        widths = {len(row) for row in self.rows}
        if len(widths) > 1:
            raise ValueError("Ragged matrix rows")
        if any(entry.level != resolved for row in self.rows for entry in row):
            raise ValueError(f"Entries do not fit level {resolved}")

    @classmethod
    def identity(cls, size: int, level: int = 1) -> "CyclotomicMatrix":
        one, zero = Cyclotomic.one(level), Cyclotomic.zero(level)
        return cls([[one if i == j else zero for j in range(size)] for i in range(size)], level)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int, level: int = 1) -> "CyclotomicMatrix":
        zero = Cyclotomic.zero(level)
        return cls([[zero] * n_cols for _ in range(n_rows)], level)

    @classmethod
    def scalar(cls, size: int, value: Cyclotomic) -> "CyclotomicMatrix":
        zero = Cyclotomic.zero(value.level)
        return cls([[value if i == j else zero for j in range(size)] for i in range(size)], value.level)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def promote(self, level: int) -> "CyclotomicMatrix":
        if level == self.level:
            return self
        return CyclotomicMatrix([[e.promote(level) for e in row] for row in self.rows], level)

    def _aligned(self, other: "CyclotomicMatrix") -> Tuple["CyclotomicMatrix", "CyclotomicMatrix"]:
        if self.level == other.level:
            return self, other
        common = _lcm(self.level, other.level)
        return self.promote(common), other.promote(common)

    def __matmul__(self, other: "CyclotomicMatrix") -> "CyclotomicMatrix":
        if not isinstance(other, CyclotomicMatrix):
            return NotImplemented
        a, b = self._aligned(other)
        n, k = a.shape
        k2, m = b.shape
        if k != k2:
            raise ValueError(f"Shape mismatch {a.shape} @ {b.shape}")
        zero = Cyclotomic.zero(a.level)
        columns = [[(i, b.rows[i][j]) for i in range(k) if b.rows[i][j]] for j in range(m)]
        out = []
        for row in a.rows:
            out_row = []
            for column in columns:
                total = zero
                for i, entry in column:
                    if row[i]:
                        total = total + row[i] * entry
                out_row.append(total)
            out.append(out_row)
        return CyclotomicMatrix(out, a.level)

    def __add__(self, other: "CyclotomicMatrix") -> "CyclotomicMatrix":
        a, b = self._aligned(other)
        if a.shape != b.shape:
            raise ValueError(f"Shape mismatch {a.shape} + {b.shape}")
        return CyclotomicMatrix(
            [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a.rows, b.rows)], a.level
        )

    def __sub__(self, other: "CyclotomicMatrix") -> "CyclotomicMatrix":
        return self + other.scale(-1)

    def scale(self, value: Union[Scalar, Cyclotomic]) -> "CyclotomicMatrix":
        return CyclotomicMatrix([[e * value for e in row] for row in self.rows])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclotomicMatrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        a, b = self._aligned(other)
        return all(x == y for ra, rb in zip(a.rows, b.rows) for x, y in zip(ra, rb))

    __hash__ = None  # type: ignore[assignment]

    def trace(self) -> Cyclotomic:
        total = Cyclotomic.zero(self.level)
        for i, row in enumerate(self.rows):
            total = total + row[i]
        return total

    def transpose(self) -> "CyclotomicMatrix":
        return CyclotomicMatrix([list(col) for col in zip(*self.rows)], self.level)

    def conjugate_transpose(self) -> "CyclotomicMatrix":
        return CyclotomicMatrix([[e.conjugate() for e in col] for col in zip(*self.rows)], self.level)

    def scalar_value(self) -> Optional[Cyclotomic]:
        """The scalar c when the matrix equals c times the identity."""
        n, m = self.shape
        if n != m or n == 0:
            return None
        value = self.rows[0][0]
        for i, row in enumerate(self.rows):
            for j, entry in enumerate(row):
                if i == j and entry != value:
                    return None
                if i != j and entry:
                    return None
        return value

    def _eliminate(self) -> Tuple[Cyclotomic, Optional[List[List[Cyclotomic]]]]:
        n, m = self.shape
        if n != m:
            raise ValueError("Square matrix required")
        work = [list(row) + [Cyclotomic.one(self.level) if i == j else Cyclotomic.zero(self.level) for j in range(n)]
                for i, row in enumerate(self.rows)]
        det = Cyclotomic.one(self.level)
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col]), None)
            if pivot is None:
                return Cyclotomic.zero(self.level), None
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                det = -det
            pivot_value = work[col][col]
            det = det * pivot_value
            inv = pivot_value.inverse()
            work[col] = [e * inv for e in work[col]]
            for r in range(n):
                if r != col and work[r][col]:
                    factor = work[r][col]
                    work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
        return det, [row[n:] for row in work]

    def det(self) -> Cyclotomic:
        return self._eliminate()[0]

    def inverse(self) -> "CyclotomicMatrix":
        det, inv = self._eliminate()
        if inv is None:
            raise ZeroDivisionError("singular matrix")
        return CyclotomicMatrix(inv, self.level)

    def __repr__(self) -> str:
        return f"CyclotomicMatrix(level={self.level}, shape={self.shape})"


class MonomialMatrix:
    """Matrix with one root-of-unity entry per column.

    Column j holds zeta_N^exps[j] in row perm[j].
    """

    __slots__ = ("level", "perm", "exps")

    def __init__(self, level: int, perm: Sequence[int], exps: Sequence[int]) -> None:
        if sorted(perm) != list(range(len(perm))):
            raise ValueError("perm must be a permutation")
        if len(exps) != len(perm):
            raise ValueError("perm and exps lengths differ")
        self.level = level
        self.perm = tuple(perm)
        self.exps = tuple(e % level for e in exps)

    @classmethod
    def identity(cls, size: int, level: int = 1) -> "MonomialMatrix":
        return cls(level, range(size), [0] * size)

    @property
    def size(self) -> int:
        return len(self.perm)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.size, self.size

    def __matmul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        if not isinstance(other, MonomialMatrix):
            return NotImplemented
        if self.level != other.level:
            level = _lcm(self.level, other.level)
            return self.promote(level) @ other.promote(level)
        perm = [self.perm[other.perm[j]] for j in range(self.size)]
        exps = [self.exps[other.perm[j]] + other.exps[j] for j in range(self.size)]
        return MonomialMatrix(self.level, perm, exps)

    def promote(self, level: int) -> "MonomialMatrix":
        if level % self.level:
            raise ValueError(f"Cannot promote level {self.level} to {level}")
        step = level // self.level
        return MonomialMatrix(level, self.perm, [e * step for e in self.exps])

    def inverse(self) -> "MonomialMatrix":
        perm = [0] * self.size
        exps = [0] * self.size
        for j, (row, e) in enumerate(zip(self.perm, self.exps)):
            perm[row] = j
            exps[row] = -e
        return MonomialMatrix(self.level, perm, exps)

    def is_diagonal(self) -> bool:
        return all(row == j for j, row in enumerate(self.perm))

    def trace(self) -> Cyclotomic:
        counts: dict = {}
        for j, (row, e) in enumerate(zip(self.perm, self.exps)):
            if row == j:
                counts[e] = counts.get(e, 0) + 1
        return Cyclotomic.from_exponent_counts(self.level, counts)

    def to_dense(self) -> CyclotomicMatrix:
        zero = Cyclotomic.zero(self.level)
        rows = [[zero] * self.size for _ in range(self.size)]
        for j, (row, e) in enumerate(zip(self.perm, self.exps)):
            rows[row][j] = Cyclotomic.root_of_unity(self.level, e)
        return CyclotomicMatrix(rows, self.level)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialMatrix):
            return NotImplemented
        if self.level != other.level:
            level = _lcm(self.level, other.level)
            return self.promote(level) == other.promote(level)
        return self.perm == other.perm and self.exps == other.exps

    def __hash__(self) -> int:
        return hash((self.perm, tuple(Fraction(e, self.level) for e in self.exps)))

    def __repr__(self) -> str:
        return f"MonomialMatrix(level={self.level}, size={self.size})"
