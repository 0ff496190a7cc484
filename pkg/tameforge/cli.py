"""Command-line entry point: one subcommand per report pipeline.

Exit status 0 on success, 1 on a domain error, 2 on a property or theorem
violation.  Failures are written as a structured error object; run metadata
goes to a separate manifest so report payloads stay byte-identical.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import yaml

from tameforge import config, logging_utils, manifest
from tameforge.errors import InvalidInput, TameforgeError
from tameforge.fields import FieldSpec, parse_field
from tameforge.serialization import character_table_csv, character_table_json, int_matrix, load_json, write_report
from tameforge.version import __version__

LOGGER = logging.getLogger(__name__)

COMMANDS = ("tower", "generic", "torsion", "weil", "intertwine", "distinction", "selftest")


@dataclass
class RunConfig:
    """Resolved inputs for one invocation."""

    command: str
    out_dir: str
    settings: config.Settings
    seed: int
    input_files: List[str] = field(default_factory=list)
    report_files: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def write(self, name: str, payload: Any) -> str:
        path = write_report(payload, os.path.join(self.out_dir, name))
        self.report_files.append(path)
        return path

    def write_text(self, name: str, text: str) -> str:
        path = os.path.join(self.out_dir, name)
        os.makedirs(self.out_dir, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        self.report_files.append(path)
        return path

    def load(self, path: Optional[str], what: str) -> Any:
        if not path:
            raise InvalidInput(f"--{what} is required for {self.command}")
        self.input_files.append(path)
        return load_json(path)


def _parse_field_arg(value: str) -> FieldSpec:
    try:
        return parse_field(value)
    except TameforgeError as exc:
        raise argparse.ArgumentTypeError(exc.message) from exc


def _parse_int_list(value: str) -> List[int]:
    try:
        return [int(item) for item in value.split(",") if item.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"Expected comma-separated integers, got {value!r}") from exc


# loaders


def _load_datum(run: RunConfig, path: Optional[str]):
    from tameforge.rootdata import RootDatum, classify_and_validate

    datum = RootDatum.from_dict(run.load(path, "datum"), os.path.basename(path or ""))
    classify_and_validate(datum, run.settings.simple_system)
    return datum


def _load_action(run: RunConfig, datum, path: Optional[str]):
    from tameforge.galois_action import GaloisAction

    if not path:
        return GaloisAction.trivial(datum)
    return GaloisAction.from_dict(run.load(path, "galois"), datum, run.settings.bounds.galois_closure)


def _load_character_data(run: RunConfig, args: argparse.Namespace):
    from tameforge.depthrecursion import CharacterData, validate_character_data

    datum = _load_datum(run, args.datum)
    action = _load_action(run, datum, args.galois)
    raw = run.load(args.chars, "chars")
    if not isinstance(raw, dict):
        raise InvalidInput("Character data must be a JSON object")
    data = CharacterData.from_dict(raw, action)
    validate_character_data(data)
    return data


# commands


def cmd_tower(run: RunConfig, args: argparse.Namespace) -> None:
    from tameforge.depthrecursion import permissibility_report, recover_tower, tower_subspaces

    data = _load_character_data(run, args)
    tower = recover_tower(data)
    payload = tower.to_dict()
    payload["z_subspaces"] = tower_subspaces(tower)
    run.write("tower.json", payload)
    if args.check_genericity or args.field is not None:
        spec = args.field or data.field_spec
        if spec is None:
            raise InvalidInput("--field is required when the character data carry no residues")
        spec.check_bound(run.settings.bounds.max_field_order)
        report = permissibility_report(data, spec.p, spec.m, check_genericity=args.check_genericity or None)
        run.write("permissibility.json", report)


def cmd_generic(run: RunConfig, args: argparse.Namespace) -> None:
    from tameforge.depthrecursion import permissibility_report
    from tameforge.genericity import functional_from_codes, ge_check
    from tameforge.rootdata import LeviSubsystem

    if args.field is None:
        raise InvalidInput("--field p,m is required for generic")
    spec = args.field.require_odd().check_bound(run.settings.bounds.max_field_order)
    if args.point is not None:
        datum = _load_datum(run, args.datum)
        if len(args.point) != datum.rank:
            raise InvalidInput(f"--point needs {datum.rank} coordinates, got {len(args.point)}")
        lower = LeviSubsystem.empty(datum)
        upper = LeviSubsystem.full(datum)
        functional = functional_from_codes(spec, args.point)
        report = ge_check(datum, lower, upper, functional)
        payload = {"functional": functional.to_dict(), **report.to_dict()}
        run.write("generic.json", payload)
        return
    data = _load_character_data(run, args)
    report = permissibility_report(data, spec.p, spec.m, check_genericity=True)
    run.write("generic.json", report)


def cmd_torsion(run: RunConfig, args: argparse.Namespace) -> None:
    from tameforge.rootdata import (
        classify_and_validate,
        fundamental_group_order,
        torsion_primes,
        torsion_quotient,
        torsion_report,
    )

    datum = _load_datum(run, args.datum)
    if args.p is None:
        raise InvalidInput("--p is required for torsion")
    report = torsion_report(datum, args.p)
    payload = {
        "p": args.p,
        **report.to_dict(),
        "classification": classify_and_validate(datum, run.settings.simple_system),
        "fundamental_group_order": fundamental_group_order(datum),
        "torsion_invariant_factors": torsion_quotient(datum),
        "torsion_primes": torsion_primes(datum),
    }
    run.write("torsion.json", payload)


def cmd_weil(run: RunConfig, args: argparse.Namespace) -> None:
    from tameforge.heisenberg import (
        SymplecticSpaceFp,
        build_heisenberg_rep,
        character_table_rows,
        check_covariance,
        check_homomorphism,
        image_of_s_minus_one,
        weil_extend,
        weil_trace_support,
    )
    from tameforge.errors import PropertyViolation
    from tameforge.groups import character_pairing

    if args.prime is None:
        raise InvalidInput("--prime is required for weil")
    if args.dim % 2 or args.dim < 2:
        raise InvalidInput(f"--dim must be a positive even integer, got {args.dim}")
    bounds = run.settings.bounds
    space = SymplecticSpaceFp.standard(args.prime, args.dim // 2)
    rep = build_heisenberg_rep(space, bound=bounds.max_group_elements)
    character = rep.character()
    self_pairing = character_pairing(character, character)
    if self_pairing != 1:
        raise PropertyViolation("Heisenberg character is not irreducible", {"pairing": self_pairing})

    if args.generators:
        raw = run.load(args.generators, "generators")
        if not isinstance(raw, list):
            raise InvalidInput("Generators file must hold a list of matrices")
        generators = [int_matrix(matrix, "generator") for matrix in raw]
    else:
        generators = space.default_generators()
    weil = weil_extend(rep, generators, bound=bounds.max_group_elements, search_bound=bounds.cocycle_search)
    check_covariance(weil)
    check_homomorphism(weil)
    support_failures = 0
    for s in weil.group.elements:
        if not weil_trace_support(weil, s) <= image_of_s_minus_one(space, s):
            support_failures += 1
    if support_failures:
        raise PropertyViolation(f"Weil trace support leaves Im(s - 1) for {support_failures} elements")

    payload = {
        "heisenberg": {"p": args.prime, "dim_W": args.dim, "dimension": rep.dimension, "self_pairing": self_pairing},
        "weil": weil.to_dict(),
        "covariance_checked": True,
        "homomorphism_checked": True,
        "support_checked": weil.group.order,
    }
    run.write("weil.json", payload)
    rows = character_table_rows(character)
    run.write_text("heisenberg_character.csv", character_table_csv(rows))
    run.write("heisenberg_character.json", character_table_json(rows))
    if weil.canonical_lift:
        run.notes.append("(p, dim W) = (3, 2): determinant-one tie-break used in place of the canonical lift")


def cmd_intertwine(run: RunConfig, args: argparse.Namespace) -> None:
    from tameforge.intertwining import build_fibered_sum, intertwiner

    if args.p is None:
        raise InvalidInput("--p is required for intertwine")
    data = build_fibered_sum(args.dim_w13, args.dim_w0, args.p)
    report = intertwiner(data, rng=random.Random(run.seed))
    run.write("intertwine.json", {"fibered_sum": data, "report": report})


def cmd_distinction(run: RunConfig, args: argparse.Namespace) -> None:
    from tameforge.distinction import (
        build_group_gl2,
        cuspidal_character,
        cuspidal_parameters,
        involution_orbits,
        nonsplit_torus,
        theorem_sides,
    )

    if args.q is None:
        raise InvalidInput("--q is required for distinction")
    bounds = run.settings.bounds
    G = build_group_gl2(args.q, bounds.gl2_q, bounds.max_group_elements)
    params = [args.param] if args.param is not None else cuspidal_parameters(args.q)
    orbits = involution_orbits(G)
    L = nonsplit_torus(G)
    results = []
    tables = {}
    for k in params:
        character = cuspidal_character(G, k)
        tables[str(k)] = character_table_json(character.rows())
        for orbit in orbits:
            sides = theorem_sides(G, orbit, L, k, character, inject_violation=args.inject_violation)
            results.append(sides)
    payload = {
        "q": args.q,
        "group_order": G.order,
        "classes": len(G.conjugacy_classes),
        "orbits": [orbit.to_dict() for orbit in orbits],
        "results": results,
    }
    run.write("distinction.json", payload)
    run.write("cuspidal_characters.json", tables)


def cmd_selftest(run: RunConfig, args: argparse.Namespace) -> None:
    from tameforge import selftest

    run.write("selftest.json", selftest.run_suite(random.Random(run.seed), run.settings))


HANDLERS: Dict[str, Callable[[RunConfig, argparse.Namespace], None]] = {
    "tower": cmd_tower,
    "generic": cmd_generic,
    "torsion": cmd_torsion,
    "weil": cmd_weil,
    "intertwine": cmd_intertwine,
    "distinction": cmd_distinction,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="out", help="Directory for reports and manifests")
    common.add_argument("--config", default=None, help="YAML config file (overrides the default lookup)")
    common.add_argument(
        "--bound-group-size",
        type=int,
        default=None,
        help="Override bounds.max_group_elements for this run",
    )
    common.add_argument("--seed", type=int, default=0, help="Seed for randomized sampling")
    common.add_argument("--log-level", default=None, help="Logging level (default from config)")
    common.add_argument("--log-dir", default=None, help="Directory for the rotating log file")
    common.add_argument("--quiet", action="store_true", help="Do not log to the console")

    data_args = argparse.ArgumentParser(add_help=False)
    data_args.add_argument("--datum", help="Root datum JSON")
    data_args.add_argument("--galois", help="Galois action JSON (default: trivial action)")
    data_args.add_argument("--chars", help="Character data JSON")
    data_args.add_argument("--field", type=_parse_field_arg, default=None, help="Residue field as p,m")

    parser = argparse.ArgumentParser(prog="tameforge", description="Tameforge desk-scale verification runs")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    tower = subparsers.add_parser("tower", parents=[common, data_args], help="Recover the twisted Levi tower")
    tower.add_argument(
        "--check-genericity",
        action="store_true",
        help="Also run the permissibility and GE checks",
    )

    generic = subparsers.add_parser("generic", parents=[common, data_args], help="GE1/GE2 checks")
    generic.add_argument(
        "--point",
        type=_parse_int_list,
        default=None,
        help="Residue functional coordinates (comma-separated field codes) for a full-datum check",
    )

    torsion = subparsers.add_parser("torsion", parents=[common], help="Torsion primes and pi_1 order")
    torsion.add_argument("--datum", help="Root datum JSON")
    torsion.add_argument("--p", type=int, default=None, help="Odd prime")

    weil = subparsers.add_parser("weil", parents=[common], help="Heisenberg representation and Weil extension")
    weil.add_argument("--prime", type=int, default=None, help="Odd prime p")
    weil.add_argument("--dim", type=int, default=2, help="dim W (even)")
    weil.add_argument("--generators", default=None, help="JSON list of symplectic matrices")

    intertwine = subparsers.add_parser("intertwine", parents=[common], help="Fibered-sum intertwiner")
    intertwine.add_argument("--p", type=int, default=None, help="Odd prime")
    intertwine.add_argument("--dim-w13", type=int, default=2)
    intertwine.add_argument("--dim-w0", type=int, default=0)

    distinction = subparsers.add_parser("distinction", parents=[common], help="Finite-field distinction on GL2(F_q)")
    distinction.add_argument("--q", type=int, default=None, help="Odd prime power")
    distinction.add_argument("--param", type=int, default=None, help="Cuspidal parameter k (default: all)")
    distinction.add_argument(
        "--inject-violation",
        action="store_true",
        help="Test mode: perturb the right-hand side so the check fails",
    )

    subparsers.add_parser("selftest", parents=[common], help="Run the curated invariant suite")
    return parser


def _resolve_settings(args: argparse.Namespace) -> config.Settings:
    try:
        cfg = config.load_config(args.config)
        return config.resolve_settings(cfg, max_group_elements=args.bound_group_size)
    except FileNotFoundError as exc:
        raise InvalidInput(str(exc)) from exc
    except yaml.YAMLError as exc:
        raise InvalidInput(f"Config file is not valid YAML: {exc}") from exc
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc


def run(args: argparse.Namespace) -> int:
    """Dispatch one command; always writes a manifest, and error.json on failure."""
    try:
        settings = _resolve_settings(args)
    except InvalidInput as exc:
        settings = None
        early_error: Optional[TameforgeError] = exc
    else:
        early_error = None

    log_dir = args.log_dir or (settings.log_dir if settings else config.default_log_dir())
    level = args.log_level or (settings.log_level if settings else "INFO")
    logging_utils.setup_logging(log_dir, level, console=not args.quiet)

    run_config = RunConfig(args.command, args.out, settings or config.resolve_settings({}), args.seed)
    status = 0
    error: Optional[TameforgeError] = early_error
    if error is None:
        try:
            HANDLERS[args.command](run_config, args)
        except TameforgeError as exc:
            error = exc
        except FileNotFoundError as exc:
            error = InvalidInput(str(exc), {"kind": "missing_file"})
        except json.JSONDecodeError as exc:
            error = InvalidInput(f"Malformed JSON: {exc}", {"kind": "json"})

    if error is not None:
        status = error.exit_status
        LOGGER.error("%s failed: %s", args.command, error.message)
        run_config.write("error.json", error.to_dict())
        print(json.dumps(error.to_dict(), sort_keys=True, default=str), file=sys.stderr)
    else:
        LOGGER.info("%s wrote %d report files", args.command, len(run_config.report_files))

    record = manifest.new_manifest(args.command, run_config.input_files, run_config.settings.to_dict())
    record.report_files = list(run_config.report_files)
    record.exit_status = status
    record.notes = list(run_config.notes)
    manifest.write_manifest(record, args.out)
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return run(args)


if __name__ == "__main__":
    raise SystemExit(main())
