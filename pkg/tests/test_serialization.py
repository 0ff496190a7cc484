import json
from fractions import Fraction

import pytest

from tameforge.cyclotomic import Cyclotomic
from tameforge.errors import InvalidInput
from tameforge.serialization import (
    character_table_csv,
    character_table_json,
    cyclotomic_from_dict,
    cyclotomic_to_dict,
    dumps_report,
    format_rational,
    int_matrix,
    exact_int,
    int_vector,
    load_json,
    parse_rational,
    write_report,
)


def test_format_rational_always_has_denominator():
    assert format_rational(Fraction(3, 2)) == "3/2"
    assert format_rational(2) == "2/1"
    assert format_rational(Fraction(-4, 6)) == "-2/3"


def test_parse_rational():
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational("2") == 2
    assert parse_rational(5) == 5


@pytest.mark.parametrize("value", [0.5, "0.5", "1e3", True, None, "1/0", "half"])
def test_parse_rational_rejects(value):
    with pytest.raises(InvalidInput):
        parse_rational(value)


def test_cyclotomic_dict():
    zeta = Cyclotomic.root_of_unity(3)
    data = cyclotomic_to_dict(zeta)
    assert data["level"] == 3
    assert cyclotomic_from_dict(data) == zeta


def test_cyclotomic_from_dict_rejects_missing_level():
    with pytest.raises(InvalidInput):
        cyclotomic_from_dict({"coeffs": ["1/1"]})


def test_report_is_sorted_and_exact():
    text = dumps_report({"b": Fraction(1, 2), "a": (1, 2), "c": frozenset({3, 1})})
    assert text.endswith("\n")
    assert json.loads(text) == {"a": [1, 2], "b": "1/2", "c": [1, 3]}
    assert text.index('"a"') < text.index('"b"')


def test_report_rejects_floats():
    with pytest.raises(TypeError):
        dumps_report({"x": 0.5})


def test_write_and_load(tmp_path):
    path = write_report({"value": Fraction(7, 3)}, str(tmp_path / "nested" / "report.json"))
    assert load_json(path) == {"value": "7/3"}
    with pytest.raises(FileNotFoundError):
        load_json(str(tmp_path / "missing.json"))


def test_character_table_csv():
    rows = [(0, [0, 0], 1, Cyclotomic(1, [2])), (1, [1, 0], 2, Cyclotomic.root_of_unity(3))]
    lines = character_table_csv(rows).splitlines()
    assert lines[0] == "class_index,class_rep,size,level,c0,c1"
    assert lines[1].split(",")[-3:] == ["1", "2/1", ""]
    assert lines[2].endswith(",2,3,0/1,1/1")
    table = character_table_json(rows)
    assert table[1]["size"] == 2
    assert table[1]["value"]["level"] == 3


def test_int_vector_and_matrix():
    assert int_vector([1, -2], 2, "v") == (1, -2)
    assert int_matrix([[1, 0], [0, 1]], "m") == [[1, 0], [0, 1]]
    with pytest.raises(InvalidInput):
        int_vector([1.0, 2], 2, "v")
    with pytest.raises(InvalidInput):
        int_vector([1], 2, "v")
    with pytest.raises(InvalidInput):
        int_matrix("11", "m")


@pytest.mark.parametrize("value", [2.9, 2.0, "2", True, False, None])
def test_exact_int_rejects_non_integers(value):
    with pytest.raises(InvalidInput):
        exact_int(value, "entry")
    with pytest.raises(InvalidInput):
        int_vector([1, value], 2, "v")


def test_exact_int_accepts_integral_types():
    import numpy as np
    import sympy

    assert exact_int(np.int64(-3), "entry") == -3
    assert exact_int(sympy.Integer(4), "entry") == 4
