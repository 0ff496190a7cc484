"""Explicit finite groups, class functions and linear representations.

Groups are given by an enumerated element list and a multiplication
callable; everything else (classes, subgroups, characters, induction) is
computed by enumeration.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from typing import Callable, Dict, Generic, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, TypeVar

from tameforge.cyclotomic import Cyclotomic, CyclotomicMatrix, MonomialMatrix, common_level
from tameforge.errors import ClosureBoundExceeded, GroupMismatch, NotARepresentation, NotASubgroup

LOGGER = logging.getLogger(__name__)

E = TypeVar("E", bound=Hashable)


def close_under(
    generators: Sequence[E],
    multiply: Callable[[E, E], E],
    identity: E,
    bound: int,
) -> List[E]:
    """Elements of the group generated by `generators` (BFS, right multiplication)."""
    seen = {identity}
    order = [identity]
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for gen in generators:
            nxt = multiply(current, gen)
            if nxt in seen:
                continue
            seen.add(nxt)
            order.append(nxt)
            if len(order) > bound:
                raise ClosureBoundExceeded(
                    f"Group closure exceeds {bound} elements",
                    {"bound": bound},
                )
            queue.append(nxt)
    return order


class FiniteGroup(Generic[E]):
    """A finite group with enumerated elements."""

    def __init__(
        self,
        elements: Iterable[E],
        multiply: Callable[[E, E], E],
        inverse: Callable[[E], E],
        identity: E,
        name: str = "",
    ) -> None:
        self.elements: Tuple[E, ...] = tuple(sorted(set(elements)))
        self.multiply = multiply
        self.inverse = inverse
        self.identity = identity
        self.name = name
        self._index = {g: i for i, g in enumerate(self.elements)}
        self._classes: Optional[Tuple[Tuple[E, ...], ...]] = None
        self._class_of: Optional[Dict[E, int]] = None
        if identity not in self._index:
            raise ValueError("identity is not among the elements")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[E]:
        return iter(self.elements)

    def __contains__(self, element: object) -> bool:
        return element in self._index

    def index(self, element: E) -> int:
        return self._index[element]

    def conjugate(self, g: E, x: E) -> E:
        """g x g^-1."""
        return self.multiply(self.multiply(g, x), self.inverse(g))

    def _compute_classes(self) -> None:
        class_of: Dict[E, int] = {}
        classes: List[Tuple[E, ...]] = []
        for x in self.elements:
            if x in class_of:
                continue
            members = sorted({self.conjugate(g, x) for g in self.elements})
            for member in members:
                class_of[member] = len(classes)
            classes.append(tuple(members))
        self._classes = tuple(classes)
        self._class_of = class_of
        LOGGER.debug("Group %s: %d elements in %d classes", self.name, self.order, len(classes))

    @property
    def conjugacy_classes(self) -> Tuple[Tuple[E, ...], ...]:
        """Classes ordered by their least element; each class sorted."""
        if self._classes is None:
            self._compute_classes()
        assert self._classes is not None
        return self._classes

    def class_index(self, element: E) -> int:
        if self._class_of is None:
            self._compute_classes()
        assert self._class_of is not None
        return self._class_of[element]

    def center(self) -> Tuple[E, ...]:
        return tuple(cls[0] for cls in self.conjugacy_classes if len(cls) == 1)

    def is_subgroup(self, subset: Iterable[E]) -> bool:
        members = set(subset)
        if self.identity not in members or not members <= set(self._index):
            return False
        return all(self.multiply(a, self.inverse(b)) in members for a in members for b in members)

    def subgroup(self, subset: Iterable[E], name: str = "") -> "FiniteGroup[E]":
        members = set(subset)
        if not self.is_subgroup(members):
            raise NotASubgroup(f"Subset of {self.name or 'group'} is not a subgroup", {"size": len(members)})
        return FiniteGroup(members, self.multiply, self.inverse, self.identity, name or f"{self.name}-sub")

    def generated_subgroup(self, generators: Sequence[E], bound: Optional[int] = None) -> "FiniteGroup[E]":
        elements = close_under(generators, self.multiply, self.identity, bound or self.order)
        return FiniteGroup(elements, self.multiply, self.inverse, self.identity, f"<{len(generators)} gens>")

    def generating_set(self) -> List[E]:
        """Greedy generators: every element not yet reached is added."""
        gens: List[E] = []
        reached = {self.identity}
        for g in self.elements:
            if g not in reached:
                gens.append(g)
                reached = set(close_under(gens, self.multiply, self.identity, self.order))
        return gens

    def left_coset_representatives(self, subgroup: Iterable[E]) -> List[E]:
        """Least element of each left coset gS, in order of first appearance."""
        members = list(subgroup)
        covered = set()
        reps = []
        for g in self.elements:
            if g in covered:
                continue
            reps.append(g)
            covered.update(self.multiply(g, s) for s in members)
        return reps

    def is_same(self, other: "FiniteGroup") -> bool:
        return self is other or (self.elements == other.elements and self.multiply == other.multiply)


class ClassFunction:
    """A function on conjugacy classes with cyclotomic values."""

    def __init__(self, group: FiniteGroup, values: Sequence[Cyclotomic]) -> None:
        if len(values) != len(group.conjugacy_classes):
            raise ValueError(
                f"Expected {len(group.conjugacy_classes)} class values, got {len(values)}"
            )
        self.group = group
        level = common_level(values)
        self.values: Tuple[Cyclotomic, ...] = tuple(v.promote(level) for v in values)
        self.level = level

    @classmethod
    def from_function(
        cls,
        group: FiniteGroup,
        function: Callable[[E], Cyclotomic],
        verify: bool = False,
    ) -> "ClassFunction":
        """Evaluate on class representatives; optionally check constancy on classes."""
        values = []
        for members in group.conjugacy_classes:
            value = function(members[0])
            if verify:
                for other in members[1:]:
                    if function(other) != value:
                        raise ValueError(f"Function is not constant on the class of {members[0]!r}")
            values.append(value)
        return cls(group, values)

    def __call__(self, element: E) -> Cyclotomic:
        return self.values[self.group.class_index(element)]

    @property
    def degree(self) -> Cyclotomic:
        return self(self.group.identity)

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, [v.conjugate() for v in self.values])

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        _require_same_group(self, other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __mul__(self, other: "ClassFunction") -> "ClassFunction":
        _require_same_group(self, other)
        return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group.is_same(other.group) and all(a == b for a, b in zip(self.values, other.values))

    __hash__ = None  # type: ignore[assignment]

    def rows(self) -> List[Tuple[int, E, int, Cyclotomic]]:
        """(class_index, class_rep, size, value) per class."""
        return [
            (idx, members[0], len(members), value)
            for idx, (members, value) in enumerate(zip(self.group.conjugacy_classes, self.values))
        ]


def _require_same_group(f: ClassFunction, g: ClassFunction) -> None:
    if not f.group.is_same(g.group):
        raise GroupMismatch("Class functions are defined on different groups")


def character_pairing(f: ClassFunction, g: ClassFunction) -> Cyclotomic:
    """(1/|G|) sum over G of f(x) * conj(g(x))."""
    _require_same_group(f, g)
    total = Cyclotomic.zero(1)
    for members, a, b in zip(f.group.conjugacy_classes, f.values, g.values):
        if a and b:
            total = total + (a * b.conjugate()).scale(len(members))
    return total / f.group.order


def trivial_character(group: FiniteGroup) -> ClassFunction:
    return ClassFunction(group, [Cyclotomic.one()] * len(group.conjugacy_classes))


def regular_character(group: FiniteGroup) -> ClassFunction:
    return ClassFunction(
        group,
        [Cyclotomic.rational(group.order if members[0] == group.identity else 0) for members in group.conjugacy_classes],
    )


class LinearRep:
    """A matrix representation given by images of every group element."""

    def __init__(
        self,
        group: FiniteGroup,
        images: Mapping[E, CyclotomicMatrix],
        check: bool = True,
    ) -> None:
        missing = [g for g in group.elements if g not in images]
        if missing:
            raise NotARepresentation(f"No image for {len(missing)} group elements")
        dims = {images[g].shape for g in group.elements}
        if len(dims) != 1:
            raise NotARepresentation(f"Images have differing shapes: {sorted(dims)}")
        ((n, m),) = dims
        if n != m:
            raise NotARepresentation("Images must be square")
        self.group = group
        self.images: Dict[E, CyclotomicMatrix] = {g: images[g] for g in group.elements}
        self.dimension = n
        if check:
            self.check_multiplicative()

    def __call__(self, element: E) -> CyclotomicMatrix:
        return self.images[element]

    def check_multiplicative(self, pairs: Optional[Iterable[Tuple[E, E]]] = None) -> None:
        """Raise NotARepresentation unless rho(gh) = rho(g) rho(h) on the given pairs."""
        unit = self.images[self.group.identity]
        if unit != type(unit).identity(self.dimension):
            raise NotARepresentation("Identity does not act as the identity matrix")
        checks = pairs if pairs is not None else ((g, h) for g in self.group for h in self.group)
        for g, h in checks:
            if self.images[g] @ self.images[h] != self.images[self.group.multiply(g, h)]:
                raise NotARepresentation(
                    "Images are not multiplicative",
                    {"g": repr(g), "h": repr(h)},
                )

    def character(self) -> ClassFunction:
        return ClassFunction.from_function(self.group, lambda g: self.images[g].trace())


def induce_rep(group: FiniteGroup, subgroup: Iterable[E], rep: LinearRep) -> LinearRep:
    """Induced representation Ind_S^G(rep) in the basis of left coset blocks."""
    members = set(subgroup)
    if not group.is_subgroup(members):
        raise NotASubgroup("Inducing subset is not a subgroup")
    if set(rep.group.elements) != members:
        raise NotARepresentation("Representation is not defined on the inducing subgroup")
    gens = rep.group.generating_set()
    rep.check_multiplicative((s, t) for s in gens for t in gens)

    reps = group.left_coset_representatives(members)
    d = rep.dimension
    dense = {s: _dense(rep.images[s]) for s in members}
    level = math.lcm(*(image.level for image in dense.values()))
    zero = CyclotomicMatrix.zeros(d, d, level)
    inverses = [group.inverse(r) for r in reps]
    images: Dict[E, CyclotomicMatrix] = {}
    for g in group.elements:
        blocks: List[List[CyclotomicMatrix]] = []
        for i_inv in inverses:
            left = group.multiply(i_inv, g)
            row_blocks = []
            for r in reps:
                s = group.multiply(left, r)
                row_blocks.append(dense[s] if s in members else zero)
            blocks.append(row_blocks)
        images[g] = _assemble_blocks(blocks, d)
    LOGGER.debug("Induced a %d-dimensional representation over %d cosets", d * len(reps), len(reps))
    return LinearRep(group, images, check=False)


def _assemble_blocks(blocks: List[List[CyclotomicMatrix]], d: int) -> CyclotomicMatrix:
    rows = []
    for block_row in blocks:
        for local in range(d):
            row = []
            for block in block_row:
                row.extend(block.rows[local])
            rows.append(row)
    return CyclotomicMatrix(rows)



def _dense(image) -> CyclotomicMatrix:
    return image.to_dense() if isinstance(image, MonomialMatrix) else image
