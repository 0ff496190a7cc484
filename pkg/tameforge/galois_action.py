"""Finite Galois actions on a root datum: orbits, orbit tori and ellipticity.

The Galois group is modelled by its image in Aut(X*, Phi): integer matrices
acting on X* by x -> g x and on X_* by the contragredient y -> g^-T y.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from tameforge import lattice
from tameforge.errors import InvalidInput, LeviNotGaloisStable
from tameforge.groups import close_under
from tameforge.rootdata import LeviSubsystem, Matrix, RootDatum
from tameforge.serialization import exact_int, int_vector

LOGGER = logging.getLogger(__name__)

DEFAULT_CLOSURE_BOUND = 10_000


def _as_matrix(rows: Sequence[Sequence[int]], rank: int) -> Matrix:
    if not isinstance(rows, Sequence) or isinstance(rows, str):
        raise InvalidInput("Generator is not an integer matrix")
    matrix = tuple(int_vector(row, rank, "Generator row") for row in rows)
    if len(matrix) != rank or any(len(row) != rank for row in matrix):
        raise InvalidInput(f"Generator must be a {rank}x{rank} matrix")
    return matrix


@dataclass(frozen=True)
class GaloisAction:
    """Finite group of lattice automorphisms preserving the root datum."""

    datum: RootDatum
    generators: Tuple[Matrix, ...]
    ramification_index: int = 1
    closure_bound: int = field(default=DEFAULT_CLOSURE_BOUND, compare=False)

    def __post_init__(self) -> None:
        gens = tuple(_as_matrix(g, self.datum.rank) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        e = exact_int(self.ramification_index, "ramification_index")
        if e < 1:
            raise InvalidInput(f"Ramification index must be positive, got {e}")
        object.__setattr__(self, "ramification_index", e)
        for k, g in enumerate(gens):
            self._check_generator(k, g)

    def _check_generator(self, k: int, g: Matrix) -> None:
        try:
            inverse = lattice.integer_inverse(g)
        except ValueError as exc:
            raise InvalidInput(f"Generator {k} is not invertible over Z", {"generator": k}) from exc
        contragredient = lattice.transpose(inverse)
        datum = self.datum
        for i, root in enumerate(datum.roots):
            image = lattice.mat_vec(g, root)
            if not datum.has_root(image):
                raise InvalidInput(
                    f"Generator {k} does not permute the roots (root {i})",
                    {"generator": k, "root": i},
                )
            j = datum.root_index(image)
            if lattice.mat_vec(contragredient, datum.coroots[i]) != datum.coroots[j]:
                raise InvalidInput(
                    f"Generator {k} does not respect the root-coroot bijection (root {i})",
                    {"generator": k, "root": i},
                )

    @classmethod
    def trivial(cls, datum: RootDatum, ramification_index: int = 1) -> "GaloisAction":
        return cls(datum, (), ramification_index)

    @classmethod
    def from_dict(
        cls,
        data: Mapping[str, Any],
        datum: RootDatum,
        closure_bound: int = DEFAULT_CLOSURE_BOUND,
    ) -> "GaloisAction":
        try:
            gens = tuple(_as_matrix(g, datum.rank) for g in data.get("generators", []))
            e = exact_int(data.get("ramification_index", 1), "ramification_index")
        except (TypeError, ValueError, AttributeError) as exc:
            raise InvalidInput(f"Malformed Galois action: {exc}") from exc
        return cls(datum, gens, e, closure_bound)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "generators": [[list(row) for row in g] for g in self.generators],
            "ramification_index": self.ramification_index,
        }

    def with_generators(self, extra: Iterable[Sequence[Sequence[int]]]) -> "GaloisAction":
        return GaloisAction(
            self.datum,
            self.generators + tuple(_as_matrix(g, self.datum.rank) for g in extra),
            self.ramification_index,
            self.closure_bound,
        )

    @cached_property
    def group_elements(self) -> Tuple[Matrix, ...]:
        """All elements of the generated group (ClosureBoundExceeded above the bound)."""
        elements = close_under(
            list(self.generators),
            lattice.mat_mul,
            lattice.identity(self.datum.rank),
            self.closure_bound,
        )
        LOGGER.debug("Galois closure: %d elements", len(elements))
        return tuple(elements)

    @property
    def order(self) -> int:
        return len(self.group_elements)

    def permutation(self, g: Matrix) -> Tuple[int, ...]:
        return tuple(self.datum.root_index(lattice.mat_vec(g, root)) for root in self.datum.roots)

    @cached_property
    def generator_permutations(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(self.permutation(g) for g in self.generators)

    def contragredients(self) -> List[Matrix]:
        return [lattice.transpose(lattice.integer_inverse(g)) for g in self.generators]

    def is_stable(self, members: Iterable[int]) -> bool:
        chosen = frozenset(members)
        return all(perm[i] in chosen for perm in self.generator_permutations for i in chosen)


@dataclass(frozen=True)
class OrbitSet:
    """Gamma-orbits on root indices and the pairing O <-> -O."""

    orbits: Tuple[Tuple[int, ...], ...]
    pair_map: Tuple[int, ...]

    def orbit_of(self, root: int) -> int:
        for k, orbit in enumerate(self.orbits):
            if root in orbit:
                return k
        raise KeyError(root)

    @property
    def orbit_pairs(self) -> Tuple[FrozenSet[int], ...]:
        """O union -O, each listed once, ordered by least member."""
        seen = set()
        pairs = []
        for k, orbit in enumerate(self.orbits):
            if k in seen:
                continue
            partner = self.pair_map[k]
            seen.update((k, partner))
            pairs.append(frozenset(orbit) | frozenset(self.orbits[partner]))
        return tuple(sorted(pairs, key=min))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "orbits": [list(orbit) for orbit in self.orbits],
            "pair_map": list(self.pair_map),
        }


def compute_orbits(action: GaloisAction) -> OrbitSet:
    """Connected components of the generator-permutation graph on the roots."""
    # Closing the group first surfaces infinite actions as ClosureBoundExceeded.
    action.group_elements
    datum = action.datum
    assigned: Dict[int, int] = {}
    orbits: List[Tuple[int, ...]] = []
    for start in range(datum.n_roots):
        if start in assigned:
            continue
        members = {start}
        frontier = [start]
        while frontier:
            i = frontier.pop()
            for perm in action.generator_permutations:
                j = perm[i]
                if j not in members:
                    members.add(j)
                    frontier.append(j)
        for i in members:
            assigned[i] = len(orbits)
        orbits.append(tuple(sorted(members)))
    negatives = datum.negatives
    pair_map = tuple(assigned[negatives[orbit[0]]] for orbit in orbits)
    LOGGER.debug("Computed %d orbits on %d roots", len(orbits), datum.n_roots)
    return OrbitSet(tuple(orbits), pair_map)


def orbit_torus_rank(action: GaloisAction, orbit_pair: Iterable[int]) -> int:
    """Dimension of the torus T_O: rank of the coroots of O and -O."""
    datum = action.datum
    members = datum.check_indices(orbit_pair)
    return lattice.rational_rank([datum.coroots[i] for i in sorted(members)], datum.rank)


@dataclass(frozen=True)
class EllipticityReport:
    T_elliptic_in_G: bool
    ZH_mod_ZG_anisotropic: bool

    def to_dict(self) -> Dict[str, bool]:
        return {
            "T_elliptic_in_G": self.T_elliptic_in_G,
            "ZH_mod_ZG_anisotropic": self.ZH_mod_ZG_anisotropic,
        }


def ellipticity_report(action: GaloisAction, levi: LeviSubsystem) -> EllipticityReport:
    """Gamma-invariants of Q Phi^vee and of (annihilator of Phi_H) cap Q Phi^vee."""
    if not action.is_stable(levi.members):
        raise LeviNotGaloisStable(f"Levi subsystem {levi.sorted_members()} is not Gamma-stable")
    datum = action.datum
    operators = action.contragredients()
    coroot_span = lattice.rational_column_basis(datum.coroots, datum.rank)
    elliptic = not lattice.invariant_subspace(coroot_span, operators, datum.rank)

    annihilator = lattice.rational_null_space([datum.roots[i] for i in levi.sorted_members()], datum.rank)
    centre = lattice.intersect_subspaces(annihilator, coroot_span, datum.rank)
    anisotropic = not lattice.invariant_subspace(centre, operators, datum.rank)
    return EllipticityReport(elliptic, anisotropic)


def on_depth_grid(depth: Fraction, e: int) -> bool:
    """True iff depth lies in (1/e)Z."""
    return (Fraction(depth) * e).denominator == 1


def depth_grid(e: int, upto: Fraction) -> List[Fraction]:
    """Nonnegative points of (1/e)Z up to and including `upto`."""
    steps = int(Fraction(upto) * e)
    return [Fraction(k, e) for k in range(steps + 1)]


def stable_members(action: GaloisAction, members: Iterable[int], orbits: Optional[OrbitSet] = None) -> FrozenSet[int]:
    """Union of the orbit-pairs meeting `members`."""
    orbit_set = orbits or compute_orbits(action)
    chosen = frozenset(members)
    return frozenset().union(*(pair for pair in orbit_set.orbit_pairs if pair & chosen))
