"""Wire formats: exact rationals, cyclotomics, JSON reports and CSV tables."""

from __future__ import annotations

import csv
import io
import json
import os
from fractions import Fraction
from numbers import Integral
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple

from tameforge.cyclotomic import Cyclotomic
from tameforge.errors import InvalidInput


def format_rational(value: Fraction | int) -> str:
    """Always "num/den", den >= 1."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: Any) -> Fraction:
    """Accept "num/den", "n" or an int; floats are rejected."""
    if isinstance(text, bool) or isinstance(text, float):
        raise InvalidInput(f"Rationals must be exact strings, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise InvalidInput(f"Rationals must be exact strings, got {text!r}")
    stripped = text.strip()
    if "." in stripped or "e" in stripped.lower():
        raise InvalidInput(f"Rationals must be exact strings, got {text!r}")
    try:
        return Fraction(stripped)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"Malformed rational {text!r}") from exc


def cyclotomic_to_dict(value: Cyclotomic) -> Dict[str, Any]:
    return {"level": value.level, "coeffs": [format_rational(c) for c in value.coeffs]}


def cyclotomic_from_dict(data: Mapping[str, Any]) -> Cyclotomic:
    try:
        level = int(data["level"])
        coeffs = [parse_rational(c) for c in data["coeffs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"Malformed cyclotomic value: {exc}") from exc
    return Cyclotomic(level, coeffs)


def to_jsonable(value: Any) -> Any:
    """Convert report values (Fractions, Cyclotomics, tuples, sets) to JSON types."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Cyclotomic):
        return cyclotomic_to_dict(value)
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    if isinstance(value, Mapping):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return [to_jsonable(v) for v in sorted(value)]
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def dumps_report(payload: Any) -> str:
    return json.dumps(to_jsonable(payload), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_report(payload: Any, path: str) -> str:
    """Write a deterministic JSON report (sorted keys, trailing newline)."""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(dumps_report(payload))
    return path


def load_json(path: str) -> Any:
    if not os.path.exists(path):
        raise FileNotFoundError(f"Input file not found: {path}")
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def character_table_csv(rows: Iterable[Tuple[int, Any, int, Cyclotomic]]) -> str:
    """CSV with header class_index,class_rep,size,level,c0,...; one row per class."""
    rows = list(rows)
    width = max((len(value.coeffs) for *_, value in rows), default=1)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["class_index", "class_rep", "size", "level"] + [f"c{k}" for k in range(width)])
    for index, rep, size, value in rows:
        coeffs = [format_rational(c) for c in value.coeffs]
        coeffs += [""] * (width - len(coeffs))
        writer.writerow([index, json.dumps(to_jsonable(rep)), size, value.level] + coeffs)
    return buffer.getvalue()


def character_table_json(rows: Iterable[Tuple[int, Any, int, Cyclotomic]]) -> List[Dict[str, Any]]:
    return [
        {"class_rep": to_jsonable(rep), "size": size, "value": cyclotomic_to_dict(value)}
        for _, rep, size, value in rows
    ]


def exact_int(value: Any, what: str) -> int:
    """Integers only: bools, floats and numeric strings are rejected, never truncated."""
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise InvalidInput(f"{what} must be an integer, got {value!r}")
    return int(value)


def int_vector(value: Any, length: int, what: str) -> Tuple[int, ...]:
    if not isinstance(value, Sequence) or isinstance(value, str):
        raise InvalidInput(f"{what} must be a list of integers")
    vector = tuple(exact_int(v, what) for v in value)
    if len(vector) != length:
        raise InvalidInput(f"{what} must have {length} entries, got {len(vector)}")
    return vector


def int_matrix(value: Any, what: str) -> List[List[int]]:
    if not isinstance(value, Sequence) or isinstance(value, str):
        raise InvalidInput(f"{what} must be a list of integer rows")
    rows = []
    for row in value:
        if not isinstance(row, Sequence) or isinstance(row, str):
            raise InvalidInput(f"{what} must be a list of integer rows")
        rows.append(list(int_vector(row, len(row), what)))
    return rows
