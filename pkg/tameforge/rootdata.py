"""Root data, Levi subsystems, Weyl groups and lattice invariants.

Coordinates: roots live in X* = Z^rank, coroots in X_* = Z^rank, and the
pairing is the dot product.  Root i pairs with coroot i.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from sympy import primefactors

from tameforge import lattice
from tameforge.errors import (
    EvenPrime,
    FieldCharacteristicZero,
    IndexOutOfRange,
    InvalidInput,
    NotARootSystem,
    NotLeviClosed,
    PropertyViolation,
    TooLarge,
)
from tameforge.fields import FieldSpec, reduce_ints, to_field_codes
from tameforge.groups import close_under
from tameforge.lattice import Vector
from tameforge.serialization import exact_int, int_vector

LOGGER = logging.getLogger(__name__)

Matrix = Tuple[Vector, ...]

EXCEPTIONAL_WEYL_ORDERS = {
    "E6": 51_840,
    "E7": 2_903_040,
    "E8": 696_729_600,
    "F4": 1_152,
    "G2": 12,
}


@dataclass(frozen=True)
class RootDatum:
    """Roots in X*, coroots in X_*, root i paired with coroot i."""

    rank: int
    roots: Tuple[Vector, ...]
    coroots: Tuple[Vector, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "roots", tuple(tuple(exact_int(v, "root entry") for v in r) for r in self.roots))
        object.__setattr__(self, "coroots", tuple(tuple(exact_int(v, "coroot entry") for v in c) for c in self.coroots))

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], name: str = "") -> "RootDatum":
        try:
            rank = exact_int(data["rank"], "rank")
            roots = [int_vector(r, rank, "root") for r in data["roots"]]
            coroots = [int_vector(c, rank, "coroot") for c in data["coroots"]]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"Root datum needs rank, roots and coroots: {exc}") from exc
        datum = cls(rank, tuple(roots), tuple(coroots), name or str(data.get("name", "")))
        validate_datum(datum)
        return datum

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rank": self.rank,
            "roots": [list(r) for r in self.roots],
            "coroots": [list(c) for c in self.coroots],
        }

    @property
    def n_roots(self) -> int:
        return len(self.roots)

    @cached_property
    def _root_lookup(self) -> Dict[Vector, int]:
        return {root: i for i, root in enumerate(self.roots)}

    def root_index(self, vector: Sequence[int]) -> int:
        key = tuple(int(v) for v in vector)
        try:
            return self._root_lookup[key]
        except KeyError:
            raise IndexOutOfRange(f"{list(key)} is not a root", {"vector": list(key)}) from None

    def has_root(self, vector: Sequence[int]) -> bool:
        return tuple(vector) in self._root_lookup

    @cached_property
    def negatives(self) -> Tuple[int, ...]:
        return tuple(self._root_lookup[tuple(-v for v in root)] for root in self.roots)

    def check_indices(self, indices: Iterable[int]) -> FrozenSet[int]:
        members = frozenset(indices)
        bad = sorted(i for i in members if not isinstance(i, int) or i < 0 or i >= self.n_roots)
        if bad:
            raise IndexOutOfRange(f"Root indices out of range: {bad}", {"indices": bad})
        return members

    def pairing(self, i: int, j: int) -> int:
        """<root_i, coroot_j>."""
        return lattice.dot(self.roots[i], self.coroots[j])

    def reflect(self, i: int, x: Sequence[int]) -> Vector:
        """s_a(x) = x - <x, a^vee> a on X*."""
        a, av = self.roots[i], self.coroots[i]
        c = lattice.dot(x, av)
        return tuple(xj - c * aj for xj, aj in zip(x, a))

    def coreflect(self, i: int, y: Sequence[int]) -> Vector:
        """Dual reflection y - <a, y> a^vee on X_*."""
        a, av = self.roots[i], self.coroots[i]
        c = lattice.dot(a, y)
        return tuple(yj - c * aj for yj, aj in zip(y, av))

    def reflection_matrix(self, i: int) -> Matrix:
        a, av = self.roots[i], self.coroots[i]
        return tuple(
            tuple(int(r == c) - a[r] * av[c] for c in range(self.rank)) for r in range(self.rank)
        )


def validate_datum(datum: RootDatum) -> None:
    """Raise NotARootSystem naming the first violated axiom."""

    def fail(axiom: str, message: str, **details: Any) -> None:
        raise NotARootSystem(message, {"axiom": axiom, **details})

    if datum.rank < 1:
        fail("rank", f"rank must be positive, got {datum.rank}")
    if len(datum.roots) != len(datum.coroots):
        fail("indexing", "roots and coroots differ in number")
    for kind, vectors in (("root", datum.roots), ("coroot", datum.coroots)):
        for i, v in enumerate(vectors):
            if len(v) != datum.rank:
                fail("shape", f"{kind} {i} has {len(v)} coordinates, expected {datum.rank}", index=i)
            if not any(v):
                fail("nonzero", f"{kind} {i} is zero", index=i)
    if len(set(datum.roots)) != len(datum.roots):
        fail("distinct", "roots are not distinct")

    for i in range(datum.n_roots):
        if datum.pairing(i, i) != 2:
            fail("pairing", f"<a, a^vee> = {datum.pairing(i, i)} for root {i}", index=i)

    lookup = {root: i for i, root in enumerate(datum.roots)}
    for i, root in enumerate(datum.roots):
        neg = lookup.get(tuple(-v for v in root))
        if neg is None:
            fail("negation", f"-root {i} is not a root", index=i)
        elif datum.coroots[neg] != tuple(-v for v in datum.coroots[i]):
            fail("negation", f"coroot of -root {i} is not the negated coroot", index=i)

    for i in range(datum.n_roots):
        for j, root in enumerate(datum.roots):
            image = lookup.get(datum.reflect(i, root))
            if image is None:
                fail("reflection", f"s_{i} does not permute the roots (root {j})", index=i, root=j)
            elif datum.coreflect(i, datum.coroots[j]) != datum.coroots[image]:
                fail("reflection", f"s_{i} does not permute the coroots compatibly (root {j})", index=i, root=j)


@dataclass(frozen=True)
class ComponentType:
    cartan_type: str
    rank: int
    weyl_order: int
    simple_roots: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cartan_type": self.cartan_type,
            "rank": self.rank,
            "weyl_order": self.weyl_order,
            "simple_roots": list(self.simple_roots),
        }


@dataclass(frozen=True)
class ClassificationReport:
    components: Tuple[ComponentType, ...]
    weyl_order: int

    @property
    def types(self) -> Tuple[str, ...]:
        return tuple(c.cartan_type for c in self.components)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "components": [c.to_dict() for c in self.components],
            "weyl_order": self.weyl_order,
        }


def _positive_functional(datum: RootDatum) -> Vector:
    bound = max((abs(v) for root in datum.roots for v in root), default=1)
    base = 2 * bound + 1
    return tuple(base**j for j in range(datum.rank))


def simple_roots(
    datum: RootDatum,
    members: Optional[Iterable[int]] = None,
    given: Optional[Sequence[int]] = None,
) -> Tuple[int, ...]:
    """Indices of a simple system of the subsystem `members` (default: all roots).

    With `given`, the listed indices are used after checking that they form a
    base (every member is an integral combination with coefficients of one sign).
    """
    pool = sorted(datum.check_indices(range(datum.n_roots) if members is None else members))
    if given is not None:
        datum.check_indices(given)
        _check_base(datum, pool, tuple(given))
        return tuple(given)
    f = _positive_functional(datum)
    positive = [i for i in pool if lattice.dot(f, datum.roots[i]) > 0]
    positive_set = {datum.roots[i] for i in positive}
    simple = []
    for i in positive:
        root = datum.roots[i]
        decomposable = any(
            tuple(x - y for x, y in zip(root, datum.roots[j])) in positive_set
            for j in positive
            if j != i
        )
        if not decomposable:
            simple.append(i)
    return tuple(sorted(simple, key=lambda i: tuple(-v for v in datum.roots[i])))


def _check_base(datum: RootDatum, pool: Sequence[int], base: Sequence[int]) -> None:
    basis = [datum.roots[i] for i in base]
    if lattice.rational_rank(basis, datum.rank) != len(basis):
        raise InvalidInput("Given simple roots are linearly dependent")
    for i in pool:
        coords = lattice.rational_coordinates(datum.roots[i], basis)
        if coords is None:
            raise InvalidInput(f"Root {i} is outside the span of the given simple roots")
        if any(c.denominator != 1 for c in coords) or (min(coords) < 0 < max(coords)):
            raise InvalidInput(f"Root {i} is not a same-sign integral combination of the given simple roots")


def cartan_matrix(datum: RootDatum, simple: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    """A_ij = <alpha_i, alpha_j^vee>."""
    return tuple(tuple(datum.pairing(i, j) for j in simple) for i in simple)


def _components(cartan: Sequence[Sequence[int]]) -> List[List[int]]:
    n = len(cartan)
    seen: set = set()
    components = []
    for start in range(n):
        if start in seen:
            continue
        comp = []
        queue = deque([start])
        seen.add(start)
        while queue:
            i = queue.popleft()
            comp.append(i)
            for j in range(n):
                if j not in seen and cartan[i][j] != 0 and i != j:
                    seen.add(j)
                    queue.append(j)
        components.append(sorted(comp))
    return components


def _type_weyl_order(letter: str, n: int) -> int:
    if letter == "A":
        return factorial(n + 1)
    if letter in ("B", "C"):
        return 2**n * factorial(n)
    if letter == "D":
        return 2 ** (n - 1) * factorial(n)
    return EXCEPTIONAL_WEYL_ORDERS[f"{letter}{n}"]


def classify_cartan(cartan: Sequence[Sequence[int]]) -> str:
    """Cartan type of an indecomposable finite-type Cartan matrix."""
    n = len(cartan)
    if n == 1:
        return "A1"
    neighbours = {i: [j for j in range(n) if j != i and cartan[i][j] != 0] for i in range(n)}
    bonds = {(i, j): cartan[i][j] * cartan[j][i] for i in range(n) for j in neighbours[i] if i < j}
    edges = len(bonds)
    if edges != n - 1 or any(m not in (1, 2, 3) for m in bonds.values()):
        raise NotARootSystem("Cartan matrix is not of finite type", {"axiom": "classification"})
    if any(m == 3 for m in bonds.values()):
        if n != 2:
            raise NotARootSystem("Triple bond outside rank 2", {"axiom": "classification"})
        return "G2"

    doubles = [pair for pair, m in bonds.items() if m == 2]
    if doubles:
        if len(doubles) > 1 or any(len(nb) > 2 for nb in neighbours.values()):
            raise NotARootSystem("Unexpected multiply-laced diagram", {"axiom": "classification"})
        if n == 2:
            return "B2"
        i, j = doubles[0]
        short = i if cartan[i][j] == -1 else j
        long_ = j if short == i else i
        if n == 4 and len(neighbours[i]) == 2 and len(neighbours[j]) == 2:
            return "F4"
        short_side = _side_size(neighbours, short, long_)
        return f"B{n}" if short_side == 1 else f"C{n}"

    branch = [i for i, nb in neighbours.items() if len(nb) == 3]
    if not branch:
        if any(len(nb) > 2 for nb in neighbours.values()):
            raise NotARootSystem("Unexpected simply-laced diagram", {"axiom": "classification"})
        return f"A{n}"
    if len(branch) > 1 or any(len(nb) > 3 for nb in neighbours.values()):
        raise NotARootSystem("Diagram has several branch points", {"axiom": "classification"})
    centre = branch[0]
    arms = sorted(_side_size(neighbours, nb, centre) for nb in neighbours[centre])
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    exceptional = {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}
    name = exceptional.get(tuple(arms))
    if name is None:
        raise NotARootSystem("Diagram is not of finite type", {"axiom": "classification"})
    return name


def _side_size(neighbours: Mapping[int, List[int]], start: int, blocked: int) -> int:
    seen = {start, blocked}
    queue = deque([start])
    count = 0
    while queue:
        node = queue.popleft()
        count += 1
        for nxt in neighbours[node]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return count


def _weyl_order_of_type(cartan_type: str) -> int:
    return _type_weyl_order(cartan_type[0], int(cartan_type[1:]))


@lru_cache(maxsize=4096)
def _classify(datum: RootDatum, members: FrozenSet[int]) -> ClassificationReport:
    return _report_from_simple(datum, simple_roots(datum, members))


def _report_from_simple(datum: RootDatum, simple: Sequence[int]) -> ClassificationReport:
    cartan = cartan_matrix(datum, simple)
    components = []
    order = 1
    for comp in _components(cartan):
        sub = [[cartan[i][j] for j in comp] for i in comp]
        cartan_type = classify_cartan(sub)
        w = _weyl_order_of_type(cartan_type)
        order *= w
        components.append(ComponentType(cartan_type, len(comp), w, tuple(simple[i] for i in comp)))
    components.sort(key=lambda c: (c.cartan_type, c.simple_roots))
    return ClassificationReport(tuple(components), order)


def classify_and_validate(datum: RootDatum, simple_system: str = "auto") -> ClassificationReport:
    """Validate the datum and report its irreducible components and |W|.

    With simple_system="given" the first roots of the datum (as many as the
    rank of the root span) are taken as the simple system.
    """
    validate_datum(datum)
    if simple_system == "given":
        r = lattice.rational_rank(datum.roots, datum.rank)
        report = _report_from_simple(datum, simple_roots(datum, given=tuple(range(r))))
    elif simple_system == "auto":
        report = _classify(datum, frozenset(range(datum.n_roots)))
    else:
        raise InvalidInput(f"Unknown simple system mode {simple_system!r}")
    LOGGER.debug("Classified %s: %s, |W| = %d", datum.name or "datum", report.types, report.weyl_order)
    return report


def weyl_order(datum: RootDatum, members: Optional[Iterable[int]] = None) -> int:
    chosen = frozenset(range(datum.n_roots)) if members is None else datum.check_indices(members)
    if not chosen:
        return 1
    return _classify(datum, chosen).weyl_order


@lru_cache(maxsize=4096)
def _annihilator(datum: RootDatum, members: FrozenSet[int]) -> Tuple[Tuple[Fraction, ...], ...]:
    rows = [datum.roots[i] for i in sorted(members)]
    return tuple(tuple(v) for v in lattice.rational_null_space(rows, datum.rank))


def in_span_of(datum: RootDatum, members: FrozenSet[int], vector: Sequence[int]) -> bool:
    """True iff vector lies in the Q-span of the member roots."""
    if not members:
        return not any(vector)
    return all(sum(Fraction(v) * a for v, a in zip(vector, ann)) == 0 for ann in _annihilator(datum, members))


def _levi_closed(datum: RootDatum, members: FrozenSet[int]) -> bool:
    if any(datum.negatives[i] not in members for i in members):
        return False
    return all(i in members or not in_span_of(datum, members, datum.roots[i]) for i in range(datum.n_roots))


def is_levi_subsystem(datum: RootDatum, subset: Iterable[int]) -> bool:
    """True iff subset is symmetric and equals Phi intersected with its Q-span."""
    return _levi_closed(datum, datum.check_indices(subset))


@dataclass(frozen=True)
class LeviSubsystem:
    """A Levi subsystem Phi' = Phi cap Q Phi' of a root datum."""

    parent: RootDatum
    members: FrozenSet[int]

    def __post_init__(self) -> None:
        members = self.parent.check_indices(self.members)
        object.__setattr__(self, "members", members)
        if not _levi_closed(self.parent, members):
            raise NotLeviClosed(None, f"Roots {sorted(members)} do not form a Levi subsystem")

    @classmethod
    def full(cls, datum: RootDatum) -> "LeviSubsystem":
        return cls(datum, frozenset(range(datum.n_roots)))

    @classmethod
    def empty(cls, datum: RootDatum) -> "LeviSubsystem":
        return cls(datum, frozenset())

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, index: object) -> bool:
        return index in self.members

    def sorted_members(self) -> List[int]:
        return sorted(self.members)

    def weyl_order(self) -> int:
        return weyl_order(self.parent, self.members)

    def simple_roots(self) -> Tuple[int, ...]:
        return simple_roots(self.parent, self.members) if self.members else ()

    def to_vectors(self) -> List[List[int]]:
        return [list(self.parent.roots[i]) for i in self.sorted_members()]


@dataclass(frozen=True)
class WeylGroup:
    """Weyl group of a subsystem, by simple reflections and order."""

    generators: Tuple[Matrix, ...]
    order: int

    def enumerate(self, rank: int, bound: int) -> List[Matrix]:
        if self.order > bound:
            raise TooLarge(
                f"Weyl group of order {self.order} exceeds the enumeration bound {bound}",
                {"order": self.order, "bound": bound},
            )
        return close_under(list(self.generators), lattice.mat_mul, lattice.identity(rank), bound)


def weyl_group(datum: RootDatum, members: Optional[Iterable[int]] = None) -> WeylGroup:
    chosen = frozenset(range(datum.n_roots)) if members is None else datum.check_indices(members)
    simple = simple_roots(datum, chosen) if chosen else ()
    return WeylGroup(tuple(datum.reflection_matrix(i) for i in simple), weyl_order(datum, chosen))


def enumerate_weyl_group(datum: RootDatum, bound: int = 100_000) -> List[Matrix]:
    """All elements of W as integer matrices (brute-force oracle for |W|)."""
    return weyl_group(datum).enumerate(datum.rank, bound)


def weyl_stabilizer_order(
    datum: RootDatum,
    sub: LeviSubsystem,
    point: Sequence[int],
    field_spec: Optional[FieldSpec],
) -> Tuple[int, int]:
    """(orbit size, stabilizer order) of a point of X* (x) F_{p^m} under W(sub)."""
    if field_spec is None:
        raise FieldCharacteristicZero("A finite field F_{p^m} must be supplied")
    if len(point) != datum.rank:
        raise InvalidInput(f"Point needs {datum.rank} coordinates, got {len(point)}")
    gf = field_spec.field()
    p = field_spec.p
    start = gf(to_field_codes(field_spec, point))
    simple = sub.simple_roots()
    reflections = [
        (gf(reduce_ints(datum.roots[i], p)), gf(reduce_ints(datum.coroots[i], p))) for i in simple
    ]
    orbit = {tuple(start.tolist())}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for root, coroot in reflections:
            y = x - np.dot(x, coroot) * root
            key = tuple(y.tolist())
            if key not in orbit:
                orbit.add(key)
                queue.append(y)
    order = sub.weyl_order()
    if order % len(orbit):
        raise PropertyViolation(
            f"Orbit size {len(orbit)} does not divide |W| = {order}",
            {"orbit_size": len(orbit), "weyl_order": order},
        )
    return len(orbit), order // len(orbit)


def fundamental_group_order(datum: RootDatum) -> int:
    """|(X_* cap Q Phi^vee) / Z Phi^vee| via Smith normal form of the coroots."""
    return lattice.torsion_order(datum.coroots)


def torsion_quotient(datum: RootDatum) -> List[int]:
    """Invariant factors > 1 of the torsion part of X* / Z Phi."""
    return [f for f in lattice.nonzero_invariant_factors(datum.roots) if f > 1]


def torsion_primes(datum: RootDatum) -> List[int]:
    order = 1
    for f in torsion_quotient(datum):
        order *= f
    return [int(p) for p in primefactors(order)]


@dataclass(frozen=True)
class TorsionReport:
    condition4_required: bool
    reason: str
    types: Tuple[str, ...]
    torsion_order: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "condition4_required": self.condition4_required,
            "reason": self.reason,
            "types": list(self.types),
            "torsion_order": self.torsion_order,
        }


def torsion_report(datum: RootDatum, p: int) -> TorsionReport:
    """Decide whether genericity must be checked explicitly at the prime p."""
    if p == 2:
        raise EvenPrime("p must be odd")
    FieldSpec(p)
    types = classify_and_validate(datum).types
    tors = 1
    for f in torsion_quotient(datum):
        tors *= f
    families = {t[0] for t in types}
    if p == 3 and any(t in ("E6", "E7", "E8", "F4") for t in types):
        reason = "p = 3 with a factor of type E6, E7, E8 or F4"
        required = True
    elif p == 5 and "E8" in types:
        reason = "p = 5 with a factor of type E8"
        required = True
    elif "A" in families and tors % p == 0:
        reason = f"type A factor and p = {p} divides |tors(X/ZPhi)| = {tors}"
        required = True
    else:
        reason = "no torsion clause applies"
        required = False
    return TorsionReport(required, reason, types, tors)


# Standard data


def cartan_matrix_of_type(cartan_type: str) -> List[List[int]]:
    """Cartan matrix A_ij = <alpha_i, alpha_j^vee> in Bourbaki numbering."""
    letter, n = cartan_type[0].upper(), int(cartan_type[1:])
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j], a[j][i] = aij, aji

    if letter == "A" and n >= 1:
        for i in range(n - 1):
            link(i, i + 1)
    elif letter in ("B", "C") and n >= 2:
        for i in range(n - 2):
            link(i, i + 1)
        if letter == "B":
            link(n - 2, n - 1, -2, -1)
        else:
            link(n - 2, n - 1, -1, -2)
    elif letter == "D" and n >= 4:
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif letter == "E" and n in (6, 7, 8):
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif letter == "F" and n == 4:
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif letter == "G" and n == 2:
        link(0, 1, -1, -3)
    else:
        raise InvalidInput(f"Unknown Cartan type {cartan_type!r}")
    return a


def _datum_from_simple(
    simple: Sequence[Vector],
    simple_coroots: Sequence[Vector],
    rank: int,
    name: str,
) -> RootDatum:
    pairs = {}
    queue = deque()
    for r, c in zip(simple, simple_coroots):
        pairs[tuple(r)] = tuple(c)
        queue.append((tuple(r), tuple(c)))
    while queue:
        root, coroot = queue.popleft()
        for a, av in zip(simple, simple_coroots):
            k = lattice.dot(root, av)
            new_root = tuple(x - k * y for x, y in zip(root, a))
            l = lattice.dot(a, coroot)
            new_coroot = tuple(x - l * y for x, y in zip(coroot, av))
            if new_root not in pairs:
                pairs[new_root] = new_coroot
                queue.append((new_root, new_coroot))
    ordered = sorted(pairs, key=lambda r: tuple(-v for v in r))
    datum = RootDatum(rank, tuple(ordered), tuple(pairs[r] for r in ordered), name)
    validate_datum(datum)
    return datum


def simply_connected(cartan_type: str) -> RootDatum:
    """Datum with X* the weight lattice (fundamental weight coordinates)."""
    a = cartan_matrix_of_type(cartan_type)
    n = len(a)
    simple = [tuple(a[i]) for i in range(n)]
    simple_coroots = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return _datum_from_simple(simple, simple_coroots, n, f"sc-{cartan_type}")


def adjoint(cartan_type: str) -> RootDatum:
    """Datum with X* the root lattice (simple root coordinates)."""
    a = cartan_matrix_of_type(cartan_type)
    n = len(a)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    simple_coroots = [tuple(a[i][j] for i in range(n)) for j in range(n)]
    return _datum_from_simple(simple, simple_coroots, n, f"ad-{cartan_type}")


def special_linear(n: int) -> RootDatum:
    datum = simply_connected(f"A{n - 1}")
    return RootDatum(datum.rank, datum.roots, datum.coroots, f"SL{n}")


def projective_linear(n: int) -> RootDatum:
    datum = adjoint(f"A{n - 1}")
    return RootDatum(datum.rank, datum.roots, datum.coroots, f"PGL{n}")


def general_linear(n: int) -> RootDatum:
    roots = []
    for i in range(n):
        for j in range(n):
            if i != j:
                roots.append(tuple(int(k == i) - int(k == j) for k in range(n)))
    roots.sort(key=lambda r: tuple(-v for v in r))
    datum = RootDatum(n, tuple(roots), tuple(roots), f"GL{n}")
    validate_datum(datum)
    return datum


def direct_product(first: RootDatum, second: RootDatum) -> RootDatum:
    pad1 = (0,) * second.rank
    pad2 = (0,) * first.rank
    roots = [r + pad1 for r in first.roots] + [pad2 + r for r in second.roots]
    coroots = [c + pad1 for c in first.coroots] + [pad2 + c for c in second.coroots]
    return RootDatum(
        first.rank + second.rank,
        tuple(roots),
        tuple(coroots),
        f"{first.name}x{second.name}",
    )


def change_basis(datum: RootDatum, unimodular: Sequence[Sequence[int]]) -> RootDatum:
    """Same datum in new coordinates: roots by U, coroots by U^-T."""
    inverse_t = lattice.transpose(lattice.integer_inverse(unimodular))
    return RootDatum(
        datum.rank,
        tuple(lattice.mat_vec(unimodular, r) for r in datum.roots),
        tuple(lattice.mat_vec(inverse_t, c) for c in datum.coroots),
        datum.name,
    )


def sub_datum(levi: LeviSubsystem) -> RootDatum:
    """The member roots of a Levi subsystem as a root datum on the same lattices."""
    order = levi.sorted_members()
    datum = levi.parent
    return RootDatum(
        datum.rank,
        tuple(datum.roots[i] for i in order),
        tuple(datum.coroots[i] for i in order),
        f"{datum.name}-levi",
    )
