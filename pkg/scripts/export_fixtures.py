"""Fixture helpers: export standard root data and random character data as JSON."""

from __future__ import annotations

import argparse
import random
from pathlib import Path

from tameforge.depthrecursion import enumerate_levi_subsystems, random_character_data, recover_tower
from tameforge.galois_action import GaloisAction
from tameforge.rootdata import (
    RootDatum,
    adjoint,
    general_linear,
    projective_linear,
    simply_connected,
    special_linear,
)
from tameforge.serialization import load_json, write_report

FORMS = {
    "sc": simply_connected,
    "ad": adjoint,
}
LINEAR_FORMS = {
    "sl": special_linear,
    "pgl": projective_linear,
    "gl": general_linear,
}


def repo_root() -> Path:
    return Path(__file__).resolve().parents[1]


def build_datum(form: str, kind: str) -> RootDatum:
    if form in FORMS:
        return FORMS[form](kind)
    if form in LINEAR_FORMS:
        try:
            n = int(kind)
        except ValueError as exc:
            raise ValueError(f"Form {form} takes a matrix size, got {kind!r}") from exc
        return LINEAR_FORMS[form](n)
    raise ValueError(f"Unknown form {form!r}")


def cmd_datum(args: argparse.Namespace) -> None:
    datum = build_datum(args.form, args.kind)
    print(write_report(datum.to_dict(), args.out))


def cmd_random_chars(args: argparse.Namespace) -> None:
    datum = RootDatum.from_dict(load_json(args.datum))
    if args.galois:
        action = GaloisAction.from_dict(load_json(args.galois), datum)
    else:
        action = GaloisAction.trivial(datum, args.e)
    rng = random.Random(args.seed)
    levis = enumerate_levi_subsystems(action)
    out_dir = Path(args.out_dir)
    for index in range(args.count):
        data = random_character_data(action, rng, levis)
        recover_tower(data)
        print(write_report(data.to_dict(), str(out_dir / f"chars_{args.seed}_{index:03d}.json")))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Tameforge fixture export utilities.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    parser_datum = subparsers.add_parser("datum", help="Write a standard root datum.")
    parser_datum.add_argument("--form", required=True, choices=sorted({**FORMS, **LINEAR_FORMS}))
    parser_datum.add_argument(
        "--kind",
        required=True,
        help="Cartan type for sc/ad (e.g. B2), matrix size for sl/pgl/gl.",
    )
    parser_datum.add_argument("--out", required=True)
    parser_datum.set_defaults(func=cmd_datum)

    parser_chars = subparsers.add_parser(
        "random-chars", help="Write random valid character data for a datum."
    )
    parser_chars.add_argument("--datum", required=True)
    parser_chars.add_argument("--galois", default=None, help="Galois action JSON (default: trivial).")
    parser_chars.add_argument("--e", type=int, default=1, help="Ramification index for the trivial action.")
    parser_chars.add_argument("--seed", type=int, default=0)
    parser_chars.add_argument("--count", type=int, default=5)
    parser_chars.add_argument("--out-dir", default=str(repo_root() / "runtime" / "fixtures"))
    parser_chars.set_defaults(func=cmd_random_chars)

    return parser


def main() -> None:
    parser = build_parser()
    args = parser.parse_args()
    args.func(args)


if __name__ == "__main__":
    main()
