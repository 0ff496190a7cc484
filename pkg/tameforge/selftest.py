"""Curated invariant suite behind `tameforge selftest`: anchors plus seeded random sweeps."""

from __future__ import annotations

import logging
import random
from fractions import Fraction
from typing import Any, Callable, Dict, List, Tuple

from tameforge.config import Settings
from tameforge.errors import PropertyViolation, TameforgeError

LOGGER = logging.getLogger(__name__)

TOWER_INSTANCES = 15
GE_SAMPLES_PER_CASE = 50
GE_PRIMES = (3, 5, 7)


def tower_actions() -> List[Tuple[str, Any]]:
    """Galois actions on A1xA1, A2 and A3 used for the tower agreement sweep."""
    from tameforge.galois_action import GaloisAction
    from tameforge.rootdata import direct_product, simply_connected

    a1a1 = direct_product(simply_connected("A1"), simply_connected("A1"))
    a2 = simply_connected("A2")
    a3 = simply_connected("A3")
    return [
        ("A1xA1 trivial", GaloisAction.trivial(a1a1)),
        ("A1xA1 -1", GaloisAction(a1a1, (((-1, 0), (0, -1)),), 2)),
        ("A1xA1 swap", GaloisAction(a1a1, (((0, 1), (1, 0)),))),
        ("A2 trivial", GaloisAction.trivial(a2, 3)),
        ("A2 order 3", GaloisAction(a2, (((-1, -1), (1, 0)),))),
        ("A2 -1", GaloisAction(a2, (((-1, 0), (0, -1)),), 2)),
        ("A3 trivial", GaloisAction.trivial(a3, 2)),
        ("A3 -1", GaloisAction(a3, (((-1, 0, 0), (0, -1, 0), (0, 0, -1)),))),
        ("A3 diagram", GaloisAction(a3, (((0, 0, 1), (0, 1, 0), (1, 0, 0)),), 2)),
    ]


def ge_sweep_cases() -> List[Tuple[Any, int]]:
    """Type-A data of rank <= 3 paired with the primes in GE_PRIMES not dividing |X/ZPhi|."""
    from tameforge.rootdata import general_linear, projective_linear, special_linear

    cases = []
    for p in GE_PRIMES:
        for n in (2, 3, 4):
            if n % p:
                cases.append((special_linear(n), p))
        for datum in (general_linear(2), general_linear(3), projective_linear(3), projective_linear(4)):
            cases.append((datum, p))
    return cases


def _tower_agreement(rng: random.Random, settings: Settings) -> Dict[str, Any]:
    from tameforge.depthrecursion import enumerate_levi_subsystems, random_character_data, recover_tower

    counts = {}
    for name, action in tower_actions():
        levis = enumerate_levi_subsystems(action)
        for _ in range(TOWER_INSTANCES):
            recover_tower(random_character_data(action, rng, levis))
        counts[name] = TOWER_INSTANCES
    return {"instances": sum(counts.values()), "by_action": counts}


def _genericity(rng: random.Random, settings: Settings) -> Dict[str, Any]:
    from tameforge.fields import FieldSpec
    from tameforge.genericity import functional_from_codes, ge1_implies_ge2_sweep, ge_check
    from tameforge.rootdata import LeviSubsystem, simply_connected

    datum = simply_connected("A2")
    report = ge_check(
        datum,
        LeviSubsystem.empty(datum),
        LeviSubsystem.full(datum),
        functional_from_codes(FieldSpec(5), [1, 1]),
    )
    if not (report.ge1 and report.ge2 and report.stabilizer_order == 1):
        raise PropertyViolation("A2 at (1, 1) over F_5 should be generic", report.to_dict())
    sweeps = [
        ge1_implies_ge2_sweep(case, FieldSpec(p), rng, GE_SAMPLES_PER_CASE) for case, p in ge_sweep_cases()
    ]
    return {"anchor": report.to_dict(), "functionals": sum(s["samples"] for s in sweeps), "sweeps": sweeps}


def _torsion(rng: random.Random, settings: Settings) -> Dict[str, Any]:
    from tameforge.rootdata import general_linear, special_linear, torsion_report

    verdicts = {}
    for n in range(2, 7):
        for p in (3, 5):
            sl = torsion_report(special_linear(n), p).condition4_required
            gl = torsion_report(general_linear(n), p).condition4_required
            if sl != (n % p == 0) or gl:
                raise PropertyViolation(f"Torsion verdict wrong for n={n}, p={p}", {"SL": sl, "GL": gl})
            verdicts[f"n={n},p={p}"] = sl
    return {"SL_required": verdicts}


def _heisenberg(rng: random.Random, settings: Settings) -> Dict[str, Any]:
    from tameforge.groups import character_pairing
    from tameforge.heisenberg import (
        Polarization,
        SymplecticSpaceFp,
        build_heisenberg_rep,
        check_covariance,
        check_homomorphism,
        weil_extend,
    )

    space = SymplecticSpaceFp.standard(3, 1)
    rep = build_heisenberg_rep(space)
    other = build_heisenberg_rep(space, Polarization.standard(space).swapped())
    chi, chi_other = rep.character(), other.character()
    if character_pairing(chi, chi) != 1 or chi.values != chi_other.values:
        raise PropertyViolation("Stone-von Neumann check failed for p = 3")
    weil = weil_extend(rep, space.default_generators(), search_bound=settings.bounds.cocycle_search)
    check_covariance(weil)
    check_homomorphism(weil)
    return {"dimension": rep.dimension, "weil_group_order": weil.group.order, "level": weil.level}


def _intertwining(rng: random.Random, settings: Settings) -> Dict[str, Any]:
    from tameforge.intertwining import build_fibered_sum, intertwiner

    dims = {}
    for dim_w13, dim_w0 in ((0, 2), (2, 0), (2, 2)):
        report = intertwiner(build_fibered_sum(dim_w13, dim_w0, 3), rng=rng)
        dims[f"{dim_w13},{dim_w0}"] = report.hom_dimension
    return {"hom_dimensions": dims}


def _distinction(rng: random.Random, settings: Settings) -> Dict[str, Any]:
    from tameforge.distinction import (
        build_group_gl2,
        cuspidal_character,
        cuspidal_parameters,
        involution_orbits,
        nonsplit_torus,
        theorem_sides,
    )

    G = build_group_gl2(3, settings.bounds.gl2_q)
    orbits = involution_orbits(G)
    L = nonsplit_torus(G)
    checked = 0
    for k in cuspidal_parameters(3):
        character = cuspidal_character(G, k)
        for orbit in orbits:
            theorem_sides(G, orbit, L, k, character)
            checked += 1
    return {"q": 3, "pairs_checked": checked}


def _frobenius(rng: random.Random, settings: Settings) -> Dict[str, Any]:
    from tameforge.cyclotomic import Cyclotomic
    from tameforge.distinction import borel_subgroup, build_group_gl2, frobenius_induce

    G = build_group_gl2(3, settings.bounds.gl2_q)
    K = borel_subgroup(G)
    induced = frobenius_induce(G, K, {k: Cyclotomic.one() for k in K})
    if induced.degree != 4:
        raise PropertyViolation("Permutation character of GL2(F_3)/B should have degree 4")
    return {"degree": str(Fraction(induced.degree.to_fraction()))}


CHECKS: Dict[str, Callable[[random.Random, Settings], Dict[str, Any]]] = {
    "tower_agreement": _tower_agreement,
    "genericity": _genericity,
    "torsion": _torsion,
    "heisenberg_weil": _heisenberg,
    "intertwining": _intertwining,
    "distinction": _distinction,
    "frobenius": _frobenius,
}


def run_suite(rng: random.Random, settings: Settings) -> Dict[str, Any]:
    """Run every check; raise PropertyViolation listing the failures, if any."""
    results: List[Dict[str, Any]] = []
    failures = []
    for name, check in CHECKS.items():
        try:
            details = check(rng, settings)
        except TameforgeError as exc:
            LOGGER.error("Selftest %s failed: %s", name, exc.message)
            results.append({"name": name, "passed": False, "error": exc.to_dict()})
            failures.append(name)
            continue
        LOGGER.info("Selftest %s passed", name)
        results.append({"name": name, "passed": True, "details": details})
    if failures:
        raise PropertyViolation(f"Selftest failures: {', '.join(failures)}", {"results": results})
    return {"checks": results, "passed": True}
