"""Twisted Levi towers recovered from character depth data.

CharacterData records, for each Galois orbit-pair O u -O of roots, the depth
of the character on the torus T_O.  The tower (r_0 < ... < r_{d-1} <= r_d,
Phi^0 in ... in Phi^d = Phi) is rebuilt both directly from the distinct
jump depths and top-down by the recursion; the two must agree.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from tameforge import lattice
from tameforge.errors import (
    InvalidCharacterData,
    MissingResidueData,
    NotGaloisStable,
    NotLeviClosed,
    PropertyViolation,
    TooLarge,
)
from tameforge.fields import FieldSpec
from tameforge.galois_action import GaloisAction, OrbitSet, compute_orbits, on_depth_grid
from tameforge.genericity import GEReport, ResidueFunctional, assemble_residue_functional, ge_check
from tameforge.rootdata import LeviSubsystem, fundamental_group_order, is_levi_subsystem, torsion_report
from tameforge.serialization import exact_int, int_vector, parse_rational

LOGGER = logging.getLogger(__name__)

MAX_LEVI_ENUMERATION_PAIRS = 16

OrbitPair = FrozenSet[int]


@dataclass(frozen=True)
class ResidueEntry:
    root: int
    value: int
    field_spec: FieldSpec


@dataclass(frozen=True)
class CharacterData:
    """Depths per orbit-pair, the depth of rho, Phi(H, T) and optional residues."""

    action: GaloisAction
    orbit_depths: Tuple[Tuple[OrbitPair, Fraction], ...]
    rho_depth: Fraction
    levi_H: LeviSubsystem
    residue_data: Tuple[ResidueEntry, ...] = ()
    orbits: OrbitSet = field(default=None, compare=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.orbits is None:
            object.__setattr__(self, "orbits", compute_orbits(self.action))
        ordered = tuple(sorted(((frozenset(k), Fraction(v)) for k, v in self.orbit_depths), key=lambda kv: min(kv[0])))
        object.__setattr__(self, "orbit_depths", ordered)
        object.__setattr__(self, "rho_depth", Fraction(self.rho_depth))
        validate_character_data(self)

    @property
    def datum(self):
        return self.action.datum

    def depth_map(self) -> Dict[OrbitPair, Fraction]:
        return dict(self.orbit_depths)

    def depth_of_root(self, root: int) -> Fraction:
        for pair, depth in self.orbit_depths:
            if root in pair:
                return depth
        raise KeyError(root)

    @property
    def field_spec(self) -> Optional[FieldSpec]:
        specs = {entry.field_spec for entry in self.residue_data}
        return next(iter(specs)) if specs else None

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], action: GaloisAction) -> "CharacterData":
        datum = action.datum
        orbits = compute_orbits(action)
        pairs = orbits.orbit_pairs
        try:
            rows = list(data["orbit_depths"])
            rho = parse_rational(data["rho_depth"])
            levi_rows = list(data.get("levi_H", []))
            residue_rows = list(data.get("residue", []) or [])
        except (KeyError, TypeError) as exc:
            raise InvalidCharacterData(f"Character data needs orbit_depths and rho_depth: {exc}") from exc

        depths: Dict[OrbitPair, Fraction] = {}
        for row in rows:
            root = _root_of(datum, row, "orbit_rep")
            pair = next(pair for pair in pairs if root in pair)
            if pair in depths:
                raise InvalidCharacterData(
                    f"Orbit-pair of root {root} has more than one depth entry",
                    {"root": root},
                )
            depths[pair] = parse_rational(row.get("depth"))

        levi_members = frozenset(datum.root_index(int_vector(v, datum.rank, "levi_H root")) for v in levi_rows)
        levi = _level_subsystem(action, levi_members, 0)

        residues = []
        for row in residue_rows:
            root = _root_of(datum, row, "orbit_rep")
            try:
                spec = FieldSpec(*int_vector(row["field"], 2, "residue field"))
                value = exact_int(row["value"], "residue value")
            except (KeyError, TypeError, ValueError) as exc:
                raise InvalidCharacterData(f"Malformed residue entry: {exc}") from exc
            residues.append(ResidueEntry(root, value, spec))
        return cls(action, tuple(depths.items()), rho, levi, tuple(residues), orbits)

    def to_dict(self) -> Dict[str, Any]:
        datum = self.datum
        return {
            "orbit_depths": [
                {"orbit_rep": list(datum.roots[min(pair)]), "depth": depth} for pair, depth in self.orbit_depths
            ],
            "rho_depth": self.rho_depth,
            "levi_H": self.levi_H.to_vectors(),
            "residue": [
                {"orbit_rep": list(datum.roots[e.root]), "value": e.value, "field": e.field_spec.to_list()}
                for e in self.residue_data
            ],
        }


def _root_of(datum, row: Mapping[str, Any], key: str) -> int:
    if not isinstance(row, Mapping) or key not in row:
        raise InvalidCharacterData(f"Entry is missing {key}")
    return datum.root_index(int_vector(row[key], datum.rank, key))


def _level_subsystem(action: GaloisAction, members: FrozenSet[int], level: int) -> LeviSubsystem:
    if not action.is_stable(members):
        raise NotGaloisStable(level, f"Level {level} subsystem is not Gamma-stable")
    if not is_levi_subsystem(action.datum, members):
        raise NotLeviClosed(level, f"Level {level} subsystem is not a Levi subsystem")
    return LeviSubsystem(action.datum, members)


def validate_character_data(data: CharacterData) -> None:
    """Raise InvalidCharacterData (or a level error) unless the data are well formed."""
    pairs = data.orbits.orbit_pairs
    given = [pair for pair, _ in data.orbit_depths]
    if len(set(given)) != len(given):
        raise InvalidCharacterData("An orbit-pair has more than one depth entry")
    missing = [sorted(pair) for pair in pairs if pair not in given]
    extra = [sorted(pair) for pair in given if pair not in pairs]
    if missing or extra:
        raise InvalidCharacterData(
            "Depth entries must cover each orbit-pair exactly once",
            {"missing": missing, "unknown": extra},
        )

    _level_subsystem(data.action, data.levi_H.members, 0)
    e = data.action.ramification_index
    for pair, depth in data.orbit_depths:
        if depth < 0 or not on_depth_grid(depth, e):
            raise InvalidCharacterData(
                f"Depth {depth} of orbit-pair {sorted(pair)} is not on the grid (1/{e})Z",
                {"pair": sorted(pair)},
            )
        inside = pair <= data.levi_H.members
        if inside and depth != 0:
            raise InvalidCharacterData(
                f"Orbit-pair {sorted(pair)} lies in Phi(H,T) but has depth {depth}",
                {"pair": sorted(pair)},
            )
        if not inside and depth <= 0:
            raise InvalidCharacterData(
                f"Orbit-pair {sorted(pair)} lies outside Phi(H,T) but has depth 0",
                {"pair": sorted(pair)},
            )
    top = max((depth for _, depth in data.orbit_depths), default=Fraction(0))
    if data.rho_depth < top or data.rho_depth < 0:
        raise InvalidCharacterData(f"rho_depth {data.rho_depth} is below the largest orbit depth {top}")

    for entry in data.residue_data:
        if not 0 <= entry.root < data.datum.n_roots:
            raise InvalidCharacterData(f"Residue root {entry.root} out of range")
    if len({entry.field_spec for entry in data.residue_data}) > 1:
        raise InvalidCharacterData("Residue entries use more than one field")


@dataclass(frozen=True)
class LeviTower:
    """r_0 < ... < r_{d-1} <= r_d and Phi^0 in ... in Phi^d = Phi."""

    depths: Tuple[Fraction, ...]
    subsystems: Tuple[LeviSubsystem, ...]

    @property
    def d(self) -> int:
        return len(self.subsystems) - 1

    @property
    def jumps(self) -> Tuple[Fraction, ...]:
        return self.depths[: self.d] if self.d else self.depths

    def level(self, i: int) -> Tuple[LeviSubsystem, LeviSubsystem]:
        return self.subsystems[i], self.subsystems[i + 1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "depths": list(self.depths),
            "jumps": list(self.jumps),
            "subsystems": [level.sorted_members() for level in self.subsystems],
            "subsystem_roots": [level.to_vectors() for level in self.subsystems],
        }


def _pairs_below(data: CharacterData, pool: FrozenSet[int], bound: Fraction) -> FrozenSet[int]:
    members = set(data.levi_H.members)
    for pair, depth in data.orbit_depths:
        if pair <= pool and depth < bound:
            members |= pair
    return frozenset(members)


def recover_tower_direct(data: CharacterData) -> LeviTower:
    """Jumps are the distinct positive depths outside Phi^0; Phi^i collects depths below r_i."""
    action = data.action
    everything = frozenset(range(data.datum.n_roots))
    base = data.levi_H.members
    jumps = sorted({depth for pair, depth in data.orbit_depths if not pair <= base and depth > 0})
    if base == everything:
        return LeviTower((data.rho_depth,), (_level_subsystem(action, everything, 0),))
    subsystems = [_level_subsystem(action, _pairs_below(data, everything, r), i) for i, r in enumerate(jumps)]
    subsystems.append(_level_subsystem(action, everything, len(jumps)))
    return LeviTower(tuple(jumps) + (data.rho_depth,), tuple(subsystems))


def recover_tower_recursive(data: CharacterData) -> LeviTower:
    """Top-down: r_i is the largest depth in Phi^{i+1} - Phi^0, Phi^i the pairs below it."""
    action = data.action
    everything = frozenset(range(data.datum.n_roots))
    base = data.levi_H.members
    depth_of = data.depth_map()
    chain = [everything]
    depths = [data.rho_depth]
    current = everything
    while current != base:
        outside = [depth_of[pair] for pair in depth_of if pair <= current and not pair <= base]
        r = max(outside)
        current = _pairs_below(data, current, r)
        chain.append(current)
        depths.append(r)
    if len(chain) == 1:
        return LeviTower((data.rho_depth,), (_level_subsystem(action, everything, 0),))
    # chain[-1] is Phi^0 and depths[-1] is r_0
    d = len(chain) - 1
    subsystems = tuple(_level_subsystem(action, members, d - k) for k, members in enumerate(chain))[::-1]
    ordered_depths = tuple(depths[1:][::-1]) + (data.rho_depth,)
    return LeviTower(ordered_depths, subsystems)


def recover_tower(data: CharacterData) -> LeviTower:
    """Direct construction, cross-checked against the recursion."""
    direct = recover_tower_direct(data)
    recursive = recover_tower_recursive(data)
    if direct.depths != recursive.depths or [s.members for s in direct.subsystems] != [
        s.members for s in recursive.subsystems
    ]:
        raise PropertyViolation(
            "Direct and recursive tower constructions disagree",
            {"direct": direct.to_dict(), "recursive": recursive.to_dict()},
        )
    for i in range(direct.d):
        lower, upper = direct.level(i)
        if not lower.members < upper.members:
            raise PropertyViolation(f"Tower level {i} is not strictly nested")
    LOGGER.info("Recovered tower with d = %d, depths %s", direct.d, [str(r) for r in direct.depths])
    return direct


def tower_subspaces(tower: LeviTower) -> List[List[List[Fraction]]]:
    """Bases of z^{i,i+1}: the annihilator of Phi^i inside the coroot span of Phi^{i+1}."""
    out = []
    for i in range(tower.d):
        lower, upper = tower.level(i)
        datum = lower.parent
        annihilator = lattice.rational_null_space([datum.roots[k] for k in lower.sorted_members()], datum.rank)
        span = lattice.rational_column_basis([datum.coroots[k] for k in upper.sorted_members()], datum.rank)
        out.append(lattice.intersect_subspaces(annihilator, span, datum.rank))
    return out


def enumerate_levi_subsystems(action: GaloisAction) -> List[FrozenSet[int]]:
    """All Gamma-stable Levi subsystems that are unions of orbit-pairs, smallest first."""
    pairs = compute_orbits(action).orbit_pairs
    if len(pairs) > MAX_LEVI_ENUMERATION_PAIRS:
        raise TooLarge(
            f"{len(pairs)} orbit-pairs is too many to enumerate Levi subsystems",
            {"pairs": len(pairs), "bound": MAX_LEVI_ENUMERATION_PAIRS},
        )
    found = []
    for size in range(len(pairs) + 1):
        for chosen in combinations(pairs, size):
            members = frozenset().union(*chosen)
            if is_levi_subsystem(action.datum, members):
                found.append(members)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def random_character_data(
    action: GaloisAction,
    rng: random.Random,
    levis: Optional[Sequence[FrozenSet[int]]] = None,
    max_step: int = 3,
) -> CharacterData:
    """A random valid instance: a strict chain of Levi subsystems with grid depths."""
    everything = frozenset(range(action.datum.n_roots))
    levis = list(levis) if levis is not None else enumerate_levi_subsystems(action)
    base = rng.choice(levis)
    chain = [base]
    while chain[-1] != everything:
        above = [s for s in levis if chain[-1] < s]
        chain.append(rng.choice(above))
    e = action.ramification_index
    depth = Fraction(0)
    jumps = []
    for _ in range(len(chain) - 1):
        depth += Fraction(rng.randint(1, max_step), e)
        jumps.append(depth)
    pairs = compute_orbits(action).orbit_pairs
    depths = []
    for pair in pairs:
        if pair <= base:
            depths.append((pair, Fraction(0)))
            continue
        level = next(i for i in range(len(chain) - 1) if pair <= chain[i + 1])
        depths.append((pair, jumps[level]))
    rho = depth + Fraction(rng.randint(0, max_step), e)
    return CharacterData(action, tuple(depths), rho, LeviSubsystem(action.datum, base))


@dataclass(frozen=True)
class PermissibilityReport:
    torsion_flag: bool
    torsion_reason: str
    pi1_order: int
    pi1_divisibility: bool
    condition4_checked: bool
    ge_results: Tuple[Tuple[int, ResidueFunctional, GEReport], ...]
    tower: LeviTower
    notes: Tuple[str, ...] = ()

    @property
    def passes(self) -> bool:
        return all(report.ge1 and report.ge2 for _, _, report in self.ge_results)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "torsion_flag": self.torsion_flag,
            "torsion_reason": self.torsion_reason,
            "pi1_order": self.pi1_order,
            "pi1_divisibility": self.pi1_divisibility,
            "condition4_checked": self.condition4_checked,
            "ge_results": [
                {"level": level, "functional": functional.to_dict(), **report.to_dict()}
                for level, functional, report in self.ge_results
            ],
            "tower": self.tower.to_dict(),
            "passes": self.passes,
            "notes": list(self.notes),
        }


def permissibility_report(
    data: CharacterData,
    p: int,
    m: int = 1,
    check_genericity: Optional[bool] = None,
) -> PermissibilityReport:
    """Torsion flag, pi_1 divisibility and per-level GE checks for the recovered tower.

    With check_genericity=None the GE checks run exactly when the torsion
    clause makes condition (4) necessary, or when residues are supplied.
    """
    spec = FieldSpec(p, m).require_odd()
    tower = recover_tower(data)
    datum = data.datum
    torsion = torsion_report(datum, p)
    pi1 = fundamental_group_order(datum)
    divisible = pi1 % p == 0
    notes = ["condition (1) of permissibility is not modelled"]
    if divisible:
        LOGGER.warning("p = %d divides |pi_1| = %d; a z-extension would be required", p, pi1)
        notes.append("p divides |pi_1(G_der)|: z-extension flagged, not constructed")

    required = torsion.condition4_required if check_genericity is None else check_genericity
    if required and not data.residue_data and tower.d:
        raise MissingResidueData("Genericity checks need residue values for the jumping orbit-pairs")
    if data.field_spec is not None and data.field_spec != spec:
        raise InvalidCharacterData(
            f"Residues are over F_{data.field_spec.order}, but the run uses F_{spec.order}"
        )

    results = []
    if data.residue_data and (required or check_genericity is None):
        for i in range(tower.d):
            lower, upper = tower.level(i)
            prescribed = {
                entry.root: entry.value
                for entry in data.residue_data
                if entry.root in upper.members and entry.root not in lower.members
            }
            jumping = [pair for pair, _ in data.orbit_depths if pair <= upper.members and not pair <= lower.members]
            uncovered = [sorted(pair) for pair in jumping if not pair & set(prescribed)]
            if uncovered:
                raise MissingResidueData(
                    f"No residue values for level {i} orbit-pairs {uncovered}",
                    {"level": i, "pairs": uncovered},
                )
            functional = assemble_residue_functional(datum, lower, upper, prescribed, spec, tower.depths[i])
            results.append((i, functional, ge_check(datum, lower, upper, functional)))
    elif not required:
        notes.append("condition (4) follows from GE1 at this prime")

    report = PermissibilityReport(
        torsion_flag=torsion.condition4_required,
        torsion_reason=torsion.reason,
        pi1_order=pi1,
        pi1_divisibility=divisible,
        condition4_checked=bool(results),
        ge_results=tuple(results),
        tower=tower,
        notes=tuple(notes),
    )
    LOGGER.info("Permissibility at p = %d: torsion %s, %d levels checked", p, torsion.condition4_required, len(results))
    return report
