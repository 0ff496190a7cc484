"""Residue functionals of dual cosets and the genericity conditions GE1/GE2.

A residue functional is a point of X* (x) F_{p^m}; its value on a coroot
H_a is the pairing reduced into the field.  Valuations are handled by the
leading-term model: a jump of depth r contributes only its nonzero residue.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Mapping, Optional, Sequence, Tuple

import numpy as np

from tameforge.errors import (
    InconsistentFunctional,
    InconsistentPrescription,
    InvalidInput,
    NotLeviClosed,
    PropertyViolation,
    ZeroValue,
)
from tameforge.fields import (
    FieldSpec,
    field_embedding,
    generated_subfield_degree,
    reduce_ints,
    solve_affine,
    to_field_codes,
)
from tameforge.rootdata import LeviSubsystem, RootDatum, torsion_report, weyl_stabilizer_order

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResidueFunctional:
    """X~ in X*(T) (x) F_{p^m}, stored as integer field codes."""

    field_spec: FieldSpec
    coordinates: Tuple[int, ...]
    depth: Optional[Fraction] = None
    values: Tuple[Tuple[int, int], ...] = field(default=(), compare=False)

    def evaluate(self, datum: RootDatum, root: int) -> int:
        """X~(H_a) as a field code."""
        gf = self.field_spec.field()
        x = gf(list(self.coordinates))
        coroot = gf(reduce_ints(datum.coroots[root], self.field_spec.p))
        return int(np.dot(x, coroot))

    def scaled(self, factor: int) -> "ResidueFunctional":
        gf = self.field_spec.field()
        coords = gf(list(self.coordinates)) * gf(int(factor))
        return ResidueFunctional(self.field_spec, tuple(int(c) for c in coords), self.depth)

    def projective_coordinates(self) -> Tuple[int, ...]:
        """Coordinates scaled so the first nonzero one is 1."""
        lead = next((c for c in self.coordinates if c), None)
        if lead is None:
            return self.coordinates
        gf = self.field_spec.field()
        return self.scaled(int(gf(lead) ** -1)).coordinates

    def is_zero(self) -> bool:
        return not any(self.coordinates)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "field": self.field_spec.to_list(),
            "coordinates": list(self.coordinates),
            "depth": self.depth,
            "values": [{"root": root, "value": value} for root, value in self.values],
        }


def assemble_residue_functional(
    datum: RootDatum,
    lower: LeviSubsystem,
    upper: LeviSubsystem,
    prescribed: Mapping[int, int],
    field_spec: FieldSpec,
    depth: Optional[Fraction] = None,
) -> ResidueFunctional:
    """Solve X~(H_a) = 0 on the lower subsystem and X~(H_a) = value on prescribed roots.

    `prescribed` maps root indices of upper - lower to field codes.  Free
    coordinates of the solution are set to 0.
    """
    members = datum.check_indices(prescribed)
    outside = sorted(i for i in members if i not in upper.members or i in lower.members)
    if outside:
        raise InvalidInput(f"Prescribed roots {outside} are not jumping roots of this level")
    codes = dict(zip(prescribed, to_field_codes(field_spec, list(prescribed.values()))))
    zeros = sorted(i for i, code in codes.items() if code == 0)
    if zeros:
        raise ZeroValue(
            f"Prescribed value on H_a is 0 for roots {zeros}",
            {"roots": zeros},
        )

    p = field_spec.p
    gf = field_spec.field()
    matrix = []
    rhs = []
    for i in lower.sorted_members():
        matrix.append(reduce_ints(datum.coroots[i], p))
        rhs.append(0)
    for i in sorted(codes):
        matrix.append(reduce_ints(datum.coroots[i], p))
        rhs.append(codes[i])
    solution, rank = solve_affine(gf, matrix, rhs, datum.rank)
    if solution is None:
        raise InconsistentPrescription(
            "Prescribed values are inconsistent with linearity",
            {"prescribed": {str(k): v for k, v in sorted(codes.items())}},
        )
    LOGGER.debug("Residue functional solved with rank %d of %d", rank, datum.rank)

    functional = ResidueFunctional(field_spec, tuple(int(v) for v in solution), depth)
    values = tuple((i, functional.evaluate(datum, i)) for i in upper.sorted_members())
    return ResidueFunctional(field_spec, functional.coordinates, depth, values)


@dataclass(frozen=True)
class GEReport:
    ge1: bool
    ge2: bool
    stabilizer_order: int
    expected_order: int
    orbit_size: int
    certified: Optional[bool]
    zero_set_matches: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ge1": self.ge1,
            "ge2": self.ge2,
            "stabilizer_order": self.stabilizer_order,
            "expected_order": self.expected_order,
            "orbit_size": self.orbit_size,
            "certified": self.certified,
            "zero_set_matches": self.zero_set_matches,
        }


def ge_check(
    datum: RootDatum,
    lower: LeviSubsystem,
    upper: LeviSubsystem,
    functional: ResidueFunctional,
    doubling_check: bool = True,
) -> GEReport:
    """GE1: X~ nonzero on jumping coroots.  GE2: Z_{W(upper)}(X~) = W(lower)."""
    if not lower.members <= upper.members:
        raise InvalidInput("Lower subsystem is not contained in the upper one")
    if len(functional.coordinates) != datum.rank:
        raise InvalidInput(f"Functional needs {datum.rank} coordinates")

    nonzero_on_lower = [i for i in lower.sorted_members() if functional.evaluate(datum, i)]
    if nonzero_on_lower:
        raise InconsistentFunctional(
            f"X~ is nonzero on coroots of the lower subsystem: {nonzero_on_lower}",
            {"roots": nonzero_on_lower},
        )
    zero_set = frozenset(i for i in upper.members if not functional.evaluate(datum, i))
    ge1 = zero_set == lower.members
    fixing = _roots_fixing(datum, upper, functional)

    orbit, stabilizer = weyl_stabilizer_order(datum, upper, functional.coordinates, functional.field_spec)
    expected = lower.weyl_order()
    if stabilizer % expected:
        raise PropertyViolation(
            f"|W(lower)| = {expected} does not divide the stabilizer order {stabilizer}",
            {"stabilizer_order": stabilizer, "expected_order": expected},
        )
    ge2 = stabilizer == expected

    zero_set_matches = fixing == (lower.members if ge1 else zero_set)
    if ge1 and not zero_set_matches:
        raise PropertyViolation(
            "Roots fixing X~ differ from the lower subsystem although GE1 holds",
            {"fixing": sorted(fixing), "lower": lower.sorted_members()},
        )

    certified: Optional[bool] = None
    if doubling_check:
        spec = functional.field_spec
        degree = generated_subfield_degree(spec, functional.projective_coordinates())
        stable = _doubled_stabilizer(datum, upper, functional) == stabilizer
        certified = stable and degree == spec.m
        if not stable:
            LOGGER.warning("GE2 verdict over F_%d is not stable under field doubling", spec.order)
        elif degree != spec.m:
            LOGGER.warning(
                "X~ is defined over F_%d, so its GE2 verdict over F_%d is not certified",
                spec.p**degree,
                spec.order,
            )
    return GEReport(
        ge1=ge1,
        ge2=ge2,
        stabilizer_order=stabilizer,
        expected_order=expected,
        orbit_size=orbit,
        certified=certified,
        zero_set_matches=zero_set_matches,
    )


def _roots_fixing(datum: RootDatum, upper: LeviSubsystem, functional: ResidueFunctional) -> FrozenSet[int]:
    """Roots a of the upper subsystem with s_a(X~) = X~, by applying each reflection over the field."""
    spec = functional.field_spec
    gf = spec.field()
    x = gf(list(functional.coordinates))
    fixed = set()
    for i in upper.sorted_members():
        root = gf(reduce_ints(datum.roots[i], spec.p))
        coroot = gf(reduce_ints(datum.coroots[i], spec.p))
        if np.array_equal(x - np.dot(x, coroot) * root, x):
            fixed.add(i)
    return frozenset(fixed)


def _doubled_stabilizer(datum: RootDatum, upper: LeviSubsystem, functional: ResidueFunctional) -> int:
    small = functional.field_spec
    large = small.doubled()
    images = field_embedding(small.order, large.order)
    point = [images[c] for c in functional.coordinates]
    _, stabilizer = weyl_stabilizer_order(datum, upper, point, large)
    return stabilizer


def functional_from_codes(field_spec: FieldSpec, coordinates: Sequence[int]) -> ResidueFunctional:
    return ResidueFunctional(field_spec, tuple(to_field_codes(field_spec, coordinates)))


def random_functional(field_spec: FieldSpec, rank: int, rng: random.Random) -> ResidueFunctional:
    return ResidueFunctional(field_spec, tuple(rng.randrange(field_spec.order) for _ in range(rank)))


def ge1_implies_ge2_sweep(
    datum: RootDatum,
    field_spec: FieldSpec,
    rng: random.Random,
    samples: int = 1000,
) -> Dict[str, Any]:
    """Sample X~ at random, take its zero set as the lower subsystem (so GE1 holds) and require GE2.

    Only meaningful where no torsion clause applies; otherwise InvalidInput.
    """
    verdict = torsion_report(datum, field_spec.p)
    if verdict.condition4_required:
        raise InvalidInput(f"GE1 does not imply GE2 for {datum.name or 'this datum'}: {verdict.reason}")
    full = LeviSubsystem.full(datum)
    lowers: Dict[FrozenSet[int], LeviSubsystem] = {}
    by_size: Counter = Counter()
    for _ in range(samples):
        functional = random_functional(field_spec, datum.rank, rng)
        zero = frozenset(i for i in full.sorted_members() if not functional.evaluate(datum, i))
        if zero not in lowers:
            try:
                lowers[zero] = LeviSubsystem(datum, zero)
            except NotLeviClosed as exc:
                raise PropertyViolation(
                    "Zero set of a residue functional is not a Levi subsystem",
                    {"coordinates": list(functional.coordinates), "zero_set": sorted(zero)},
                ) from exc
        report = ge_check(datum, lowers[zero], full, functional, doubling_check=False)
        if not (report.ge1 and report.ge2):
            raise PropertyViolation(
                "GE1 holds but GE2 fails",
                {"coordinates": list(functional.coordinates), **report.to_dict()},
            )
        by_size[len(zero)] += 1
    LOGGER.info(
        "GE1 => GE2 held for %d functionals on %s over F_%d",
        samples,
        datum.name or "datum",
        field_spec.order,
    )
    return {
        "datum": datum.name,
        "field": field_spec.to_list(),
        "samples": samples,
        "zero_set_sizes": {str(size): count for size, count in sorted(by_size.items())},
    }
