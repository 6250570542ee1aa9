import json
from pathlib import Path

import pytest

import cli

EMPTY_TABLE = "# source: nothing tabulated\n# field-class: totally imaginary\n"


def _run(capsys, *argv: str):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bound(capsys) -> None:
    code, out, _ = _run(capsys, "bound", "--p", "3", "--S", "2", "--digits", "2")
    assert code == cli.EXIT_OK
    assert out.strip() == "10.39 (display only; exact value 2 * 3^(3/2))"


def test_bound_structured(capsys) -> None:
    code, out, _ = _run(capsys, "--format", "structured", "bound", "--p", "5")
    assert code == cli.EXIT_OK
    assert json.loads(out) == {"bound": "5^(5/4)", "decimal": "7.47"}


def test_degrees(capsys) -> None:
    assert _run(capsys, "degrees", "--p", "5")[1].strip() == "bound 5^(5/4): n <= 12"
    assert _run(capsys, "degrees", "--bound", "2 * 3^(3/2)")[1].strip() == "bound 2 * 3^(3/2): n <= 22"
    assert _run(capsys, "degrees", "--p", "11", "--r", "2")[1].strip() == "bound 11^(6/5): n <= 154"


def test_degrees_needs_a_bound(capsys) -> None:
    code, _, err = _run(capsys, "degrees")
    assert code == cli.EXIT_ERROR
    assert err.startswith("❌")


def test_prove_then_check(capsys, tmp_path: Path) -> None:
    path = tmp_path / "w1-5.cert"
    code, out, _ = _run(capsys, "prove", "weight-one", "--p", "5", "-o", str(path))
    assert code == cli.EXIT_OK
    assert out.startswith("NonExistence (")
    assert out.strip().endswith(f"-> {path}")

    code, out, _ = _run(capsys, "check", str(path))
    assert code == cli.EXIT_OK
    assert out.strip() == "certificate OK; verdict NonExistence"


def test_check_rejects_a_tampered_file(capsys, tmp_path: Path) -> None:
    path = tmp_path / "w1-7.cert"
    assert _run(capsys, "prove", "weight-one", "--p", "7", "-o", str(path))[0] == cli.EXIT_OK
    text = path.read_text(encoding="utf-8")
    path.write_text(text.replace("n <= 18", "n <= 20", 1), encoding="utf-8")
    code, out, _ = _run(capsys, "check", str(path))
    assert code == cli.EXIT_ERROR
    assert out.startswith("certificate REJECTED at S")
    assert "claim" in out


def test_check_reads_structured_certificates(capsys, tmp_path: Path) -> None:
    code, out, _ = _run(capsys, "--format", "structured", "prove", "weight-one", "--p", "5")
    assert code == cli.EXIT_OK
    data = json.loads(out)
    assert data["format"] == "discriminant-certificate 1"
    path = tmp_path / "w1-5.json"
    path.write_text(out, encoding="utf-8")
    assert _run(capsys, "check", str(path))[0] == cli.EXIT_OK


def test_check_missing_file(capsys, tmp_path: Path) -> None:
    code, _, err = _run(capsys, "check", str(tmp_path / "absent.cert"))
    assert code == cli.EXIT_ERROR
    assert "cannot read certificate" in err


def test_inconclusive_exit_code(capsys) -> None:
    code, out, _ = _run(capsys, "prove", "scenario", "--p", "11")
    assert code == cli.EXIT_INCONCLUSIVE
    assert "Inconclusive" in out

    code, _, _ = _run(capsys, "prove", "elliptic", "--p", "5", "--q", "2")
    assert code == cli.EXIT_INCONCLUSIVE


def test_empty_table_is_inconclusive(capsys, tmp_path: Path) -> None:
    table = tmp_path / "empty.tsv"
    table.write_text(EMPTY_TABLE, encoding="utf-8")
    code, out, _ = _run(capsys, "--table", str(table), "prove", "weight-one", "--p", "5")
    assert code == cli.EXIT_INCONCLUSIVE
    assert "beyond table" in out


def test_batch_writes_one_certificate_per_prime(capsys, tmp_path: Path) -> None:
    out_dir = tmp_path / "certs"
    code, out, _ = _run(capsys, "--workers", "2", "prove", "weight-one", "--p", "5", "7", "-o", str(out_dir))
    assert code == cli.EXIT_OK
    assert sorted(p.name for p in out_dir.iterdir()) == ["weight-one-p5.cert", "weight-one-p7.cert"]
    assert out.splitlines()[0].startswith("weight-one p=5: NonExistence")


def test_pins(capsys, tmp_path: Path) -> None:
    code, out, _ = _run(capsys, "pins")
    assert code == cli.EXIT_OK
    assert "[fail" not in out
    assert "[conflict" not in out

    table = tmp_path / "empty.tsv"
    table.write_text(EMPTY_TABLE, encoding="utf-8")
    assert _run(capsys, "--table", str(table), "pins")[0] == cli.EXIT_ERROR


def test_malformed_table_names_the_line(capsys, tmp_path: Path) -> None:
    table = tmp_path / "bad.tsv"
    table.write_text(EMPTY_TABLE + "2\t1.5\n4\t1.2\n", encoding="utf-8")
    code, _, err = _run(capsys, "--table", str(table), "degrees", "--p", "5")
    assert code == cli.EXIT_ERROR
    assert "line 4" in err


def test_group_commands(capsys) -> None:
    code, out, _ = _run(capsys, "subgroups", "--p", "5", "--block", "--order", "15")
    assert code == cli.EXIT_OK
    assert out.strip() == "0 classes of subgroups of order 15 in GL(2,5) x GL(1,5)"

    code, out, _ = _run(capsys, "element-orders", "--p", "5", "--order", "15")
    assert out.strip() == "GL(2,5) has no element of order 15 (full scan)"

    code, out, _ = _run(capsys, "--format", "structured", "subgroups", "--p", "3", "--order", "24")
    data = json.loads(out)
    assert [c["label"] for c in data["classes"]] == ["SL(2,3)"]


def test_weil_and_hasse(capsys) -> None:
    code, out, _ = _run(capsys, "weil", "--q", "2", "--n", "2")
    assert code == cli.EXIT_OK
    assert out.splitlines()[0] == "6 Weil polynomials for q=2, k=1, n=2"
    assert _run(capsys, "hasse", "--q", "2")[1].strip() == "#E(F_2) in [1, 5]"


@pytest.mark.parametrize(
    "argv",
    [[], ["prove"], ["prove", "no-such-preset", "--p", "5"], ["--workers", "0", "prove", "weight-one", "--p", "5"]],
)
def test_usage_errors_exit_one(capsys, argv) -> None:
    assert _run(capsys, *argv)[0] == cli.EXIT_ERROR


@pytest.mark.parametrize(
    "preset, p",
    [("thm2.4", "13"), pytest.param("thm3.1", "11", marks=pytest.mark.slow), ("thm4.1", "5"), ("remark2.5", "5")],
)
def test_theorem_named_presets_prove_and_check(capsys, tmp_path: Path, preset: str, p: str) -> None:
    path = tmp_path / f"{preset}.cert"
    code, out, _ = _run(capsys, "prove", preset, "--p", p, "-o", str(path))
    assert code == cli.EXIT_OK, out
    assert out.startswith("NonExistence (")
    assert _run(capsys, "check", str(path))[0] == cli.EXIT_OK


def test_elliptic_preset_defaults_to_five(capsys) -> None:
    code, out, _ = _run(capsys, "prove", "remark2.5")
    assert code == cli.EXIT_OK
    assert "verdict: " in out


def test_prove_needs_p_outside_the_elliptic_preset(capsys) -> None:
    code, _, err = _run(capsys, "prove", "weight-one")
    assert code == cli.EXIT_ERROR
    assert "--p is required" in err


@pytest.mark.parametrize("preset, p", [
    ("weight-one", "2"), ("weight-one", "3"), ("weight-one", "5"), ("weight-one", "7"),
    ("weight-one", "11"), ("weight-one", "13"), ("weight-two", "5"), ("weight-two", "7"),
    pytest.param("weight-two", "11", marks=pytest.mark.slow), ("semistable-at-2", "3"), ("semistable-at-2", "5"), ("elliptic", "5"),
])
@pytest.mark.slow
def test_every_preset_round_trips_through_files(capsys, tmp_path: Path, preset: str, p: str) -> None:
    text_path = tmp_path / f"{preset}-{p}.cert"
    assert _run(capsys, "prove", preset, "--p", p, "-o", str(text_path))[0] == cli.EXIT_OK
    assert _run(capsys, "check", str(text_path))[0] == cli.EXIT_OK

    json_path = tmp_path / f"{preset}-{p}.json"
    assert _run(capsys, "prove", preset, "--p", p, "--format", "structured", "-o", str(json_path))[0] == cli.EXIT_OK
    code, out, _ = _run(capsys, "check", str(json_path), "--format", "structured")
    assert code == cli.EXIT_OK
    assert json.loads(out)["verdict"]["kind"] == "NonExistence"


def test_table_flag_after_the_subcommand(capsys, tmp_path: Path) -> None:
    table = tmp_path / "empty.tsv"
    table.write_text(EMPTY_TABLE, encoding="utf-8")
    code, out, _ = _run(capsys, "prove", "weight-one", "--p", "13", "--table", str(table))
    assert code == cli.EXIT_INCONCLUSIVE
    assert "beyond table" in out

    path = tmp_path / "w1-5.cert"
    assert _run(capsys, "prove", "weight-one", "--p", "5", "-o", str(path))[0] == cli.EXIT_OK
    code, out, _ = _run(capsys, "check", str(path), "--table", str(table))
    assert code == cli.EXIT_ERROR
    assert out.startswith("certificate REJECTED")


def test_global_flags_before_the_subcommand_survive(capsys) -> None:
    code, out, _ = _run(capsys, "--format", "structured", "hasse", "--q", "2")
    assert code == cli.EXIT_OK
    assert json.loads(out)
    code, out, _ = _run(capsys, "hasse", "--q", "2", "--format", "structured")
    assert json.loads(out)
