import json

import pytest

from tameforge.cli import build_parser, main


@pytest.fixture
def run_cli(tmp_path, monkeypatch, restore_root_logger):
    monkeypatch.delenv("TAMEFORGE_MAX_ELEMENTS", raising=False)
    monkeypatch.delenv("TAMEFORGE_CONFIG_PATH", raising=False)

    def _run(*argv, out="out"):
        out_dir = tmp_path / out
        status = main([*argv, "--out", str(out_dir), "--log-dir", str(tmp_path / "logs"), "--quiet"])
        return status, out_dir

    return _run


def _read(path):
    return json.loads(path.read_text(encoding="utf-8"))


def _manifest(out_dir):
    paths = list(out_dir.glob("*.manifest.json"))
    assert len(paths) == 1
    return _read(paths[0])


def test_tower(run_cli, data_dir):
    status, out = run_cli(
        "tower",
        "--datum", str(data_dir / "a1a1.json"),
        "--galois", str(data_dir / "neg.json"),
        "--chars", str(data_dir / "depths.json"),
    )
    assert status == 0
    tower = _read(out / "tower.json")
    assert tower["d"] == 2
    assert tower["jumps"] == ["1/2", "3/2"]
    assert "z_subspaces" in tower
    record = _manifest(out)
    assert record["command"] == "tower"
    assert record["exit_status"] == 0
    assert len(record["input_sha256"]) == 3
    assert not (out / "error.json").exists()


def test_tower_with_residues_writes_permissibility(run_cli, data_dir):
    status, out = run_cli(
        "tower",
        "--datum", str(data_dir / "a1a1.json"),
        "--galois", str(data_dir / "neg.json"),
        "--chars", str(data_dir / "depths_residue.json"),
        "--check-genericity",
    )
    assert status == 0
    assert (out / "permissibility.json").exists()


def test_reports_are_deterministic(run_cli, data_dir):
    argv = (
        "tower",
        "--datum", str(data_dir / "a1a1.json"),
        "--galois", str(data_dir / "neg.json"),
        "--chars", str(data_dir / "depths.json"),
    )
    _, first = run_cli(*argv, out="first")
    _, second = run_cli(*argv, out="second")
    assert (first / "tower.json").read_bytes() == (second / "tower.json").read_bytes()


@pytest.mark.parametrize("name", ["duplicate_depth.json", "off_grid_depth.json", "float_depth.json"])
def test_malformed_character_data(run_cli, data_dir, malformed_dir, name):
    status, out = run_cli(
        "tower",
        "--datum", str(data_dir / "a1a1.json"),
        "--galois", str(data_dir / "neg.json"),
        "--chars", str(malformed_dir / name),
    )
    assert status == 1
    error = _read(out / "error.json")
    assert set(error) == {"error", "message", "details"}
    assert _manifest(out)["exit_status"] == 1


def test_truncated_json(run_cli, malformed_dir):
    status, out = run_cli("torsion", "--datum", str(malformed_dir / "truncated.json"), "--p", "5")
    assert status == 1
    assert _read(out / "error.json")["error"] == "invalid_input"


def test_missing_input_file(run_cli, tmp_path):
    status, out = run_cli("torsion", "--datum", str(tmp_path / "nope.json"), "--p", "5")
    assert status == 1
    assert _read(out / "error.json")["details"] == {"kind": "missing_file"}


def test_torsion_rejects_fractional_roots(run_cli, tmp_path):
    datum = tmp_path / "float_roots.json"
    datum.write_text(
        json.dumps({"rank": 1, "roots": [[2.9], [-2.9]], "coroots": [[1], [-1]]}),
        encoding="utf-8",
    )
    status, out = run_cli("torsion", "--datum", str(datum), "--p", "5")
    assert status == 1
    assert _read(out / "error.json")["error"] == "invalid_input"
    assert not (out / "torsion.json").exists()


def test_torsion(run_cli, data_dir):
    status, out = run_cli("torsion", "--datum", str(data_dir / "a2.json"), "--p", "5")
    assert status == 0
    report = _read(out / "torsion.json")
    assert report["fundamental_group_order"] == 1
    assert report["p"] == 5


def test_generic_point(run_cli, data_dir):
    status, out = run_cli("generic", "--datum", str(data_dir / "a2.json"), "--field", "5,1", "--point", "1,1")
    assert status == 0
    assert "stabilizer_order" in _read(out / "generic.json")


def test_generic_needs_field(run_cli, data_dir):
    status, out = run_cli("generic", "--datum", str(data_dir / "a2.json"), "--point", "1,1")
    assert status == 1
    assert _read(out / "error.json")["error"] == "invalid_input"


def test_weil(run_cli):
    status, out = run_cli("weil", "--prime", "3")
    assert status == 0
    report = _read(out / "weil.json")
    assert report["heisenberg"]["dimension"] == 3
    assert report["support_checked"] == 24
    assert (out / "heisenberg_character.csv").read_text(encoding="utf-8").startswith("class_index,")
    assert _manifest(out)["notes"]


def test_weil_rejects_odd_dim(run_cli):
    status, _ = run_cli("weil", "--prime", "3", "--dim", "3")
    assert status == 1


def test_intertwine(run_cli):
    status, out = run_cli("intertwine", "--p", "3")
    assert status == 0
    assert _read(out / "intertwine.json")["report"]["hom_dimension"] == 1


def test_distinction(run_cli):
    status, out = run_cli("distinction", "--q", "3")
    assert status == 0
    report = _read(out / "distinction.json")
    assert report["group_order"] == 48
    assert len(report["orbits"]) == 5
    assert set(_read(out / "cuspidal_characters.json")) == {"1", "2", "5"}


def test_distinction_violation_exits_two(run_cli):
    status, out = run_cli("distinction", "--q", "3", "--param", "1", "--inject-violation")
    assert status == 2
    assert _read(out / "error.json")["error"] == "theorem_violation"


def test_group_bound_override(run_cli):
    status, out = run_cli("distinction", "--q", "3", "--bound-group-size", "10")
    assert status == 1
    assert _read(out / "error.json")["error"] == "too_large"


def test_bad_config_file(run_cli, tmp_path):
    config = tmp_path / "bad.yaml"
    config.write_text("bounds:\n  gl2_q: [4]\n", encoding="utf-8")
    status, out = run_cli("intertwine", "--p", "3", "--config", str(config))
    assert status == 1
    assert (out / "error.json").exists()


def test_field_argument_is_validated():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["generic", "--field", "4,1"])
