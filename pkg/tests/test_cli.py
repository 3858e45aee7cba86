import json

import pytest

from resonaut import cli
from resonaut.exactnum import QQ
from resonaut.groebner import Ideal, ideal_equal
from resonaut.invariants import equivariant_ideal, parameter_ring
from conftest import CUBIC_RAW


@pytest.fixture
def cubic_path(tmp_path):
    path = tmp_path / "cubic.json"
    path.write_text(json.dumps(CUBIC_RAW))
    return str(path)


@pytest.fixture
def planar_path(tmp_path):
    path = tmp_path / "planar.json"
    path.write_text(json.dumps({"n": 2, "exponents": [[1, 1]]}))
    return str(path)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_matrices_text(cubic_path, capsys):
    code, out, _ = run_cli(capsys, "matrices", cubic_path)
    assert code == 0
    assert (
        "M = [[1, -1, 0, 0, 1, -1, 1, 0, -1],[0, 1, -1, -1, 0, 1, -1, 1, 0]]"
        in out
    )


def test_vars_listing(cubic_path, capsys):
    code, out, _ = run_cli(capsys, "vars", cubic_path)
    assert code == 0
    assert out.splitlines() == [
        "a100", "b010", "c001", "a001", "b100", "c010", "a101", "b110", "c011",
    ]


def test_hilbert_row_count(cubic_path, capsys):
    code, out, _ = run_cli(capsys, "hilbert", cubic_path)
    assert code == 0
    assert len(out.splitlines()) == 15


def test_invalid_spec_exits_one(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"n": 4, "exponents": [[1, 0, 0, 0]]}))
    code, out, err = run_cli(capsys, "sibirsky", str(path))
    assert code == 1
    assert "prime" in err


def test_unknown_flag_exits_one(cubic_path, capsys):
    code, _, _ = run_cli(capsys, "hilbert", cubic_path, "--frobnicate")
    assert code == 1


def test_missing_file_exits_one(capsys):
    code, _, err = run_cli(capsys, "hilbert", "/no/such/file.json")
    assert code == 1


def test_check_saturation_passes(cubic_path, capsys):
    code, out, _ = run_cli(capsys, "check-saturation", cubic_path)
    assert code == 0
    assert out.splitlines() == [
        "sibirsky_saturation_is_equivariant: PASS",
        "twisted_saturation_is_reversible: PASS",
    ]


def test_check_saturation_failure_exits_two(cubic_path, capsys, monkeypatch):
    import resonaut.invariants as inv

    real = cli.check_saturation_theorems

    def broken(spec):
        report = real(spec)
        checks = tuple(
            inv.SaturationCheck(
                name=c.name,
                left=c.left,
                right=c.right,
                equal=False,
                left_basis=c.left_basis,
                right_basis=c.right_basis,
            )
            for c in report.checks
        )
        return inv.SaturationReport(report.spec, checks)

    monkeypatch.setattr(cli, "check_saturation_theorems", broken)
    code, out, _ = run_cli(capsys, "check-saturation", cubic_path)
    assert code == 2
    assert "FAIL" in out


def test_crosscheck_2d(planar_path, capsys):
    code, out, _ = run_cli(capsys, "crosscheck-2d", planar_path)
    assert code == 0
    assert out.count("PASS") == 3


def test_crosscheck_2d_rejects_cubic(cubic_path, capsys):
    code, _, err = run_cli(capsys, "crosscheck-2d", cubic_path)
    assert code == 1


def test_output_determinism(cubic_path, capsys):
    outputs = set()
    for _ in range(2):
        code, out, _ = run_cli(capsys, "sibirsky", cubic_path)
        assert code == 0
        outputs.add(out)
    assert len(outputs) == 1
    for _ in range(2):
        code, out, _ = run_cli(capsys, "--json", "equivariant", cubic_path)
        assert code == 0
        outputs.add(out)
    assert len(outputs) == 2


def test_json_and_text_describe_same_ideal(cubic_path, capsys, cubic):
    _, text_out, _ = run_cli(capsys, "equivariant", cubic_path, "--route", "toric")
    _, json_out, _ = run_cli(
        capsys, "--json", "equivariant", cubic_path, "--route", "elimination"
    )
    ring = parameter_ring(cubic, QQ)
    from_text = Ideal(ring, [ring.parse(line) for line in text_out.splitlines()])
    payload = json.loads(json_out)
    assert payload["variables"] == list(ring.variables)
    from_json_text = Ideal(
        ring, [ring.parse(g["text"]) for g in payload["generators"]]
    )
    from_json_terms = Ideal(
        ring,
        [
            ring.from_terms(
                [(tuple(mono), ring.field.parse(coeff)) for mono, coeff in g["terms"]]
            )
            for g in payload["generators"]
        ],
    )
    reference = equivariant_ideal(cubic, "elimination")
    for candidate in (from_text, from_json_text, from_json_terms):
        assert ideal_equal(candidate, reference)


def test_zeta_reversible_routes_print_identically(cubic_path, capsys):
    _, out1, _ = run_cli(capsys, "zeta-reversible", cubic_path, "--route", "elimination")
    _, out2, _ = run_cli(capsys, "zeta-reversible", cubic_path, "--route", "zeta_toric")
    assert out1 == out2
    assert "zeta" in out1


def test_normal_form_output(cubic_path, capsys):
    code, out, _ = run_cli(capsys, "normal-form", cubic_path, "--order", "4")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    assert lines[0].startswith("q[1,1] = ")
    assert lines[1].startswith("q[2,1] = ")
    assert lines[2].startswith("q[3,1] = ")


def test_integral_at_origin(cubic_path, tmp_path, capsys, cubic):
    from resonaut.resonant import parameter_vars

    point_path = tmp_path / "origin.json"
    point_path.write_text(json.dumps({name: "0" for name in parameter_vars(cubic)}))
    code, out, _ = run_cli(
        capsys, "integral", cubic_path, "--point", str(point_path), "--order", "6"
    )
    assert code == 0
    assert out.strip() == "x1*x2*x3: 1"


def test_integral_obstruction_reported(cubic_path, tmp_path, capsys, cubic):
    from resonaut.resonant import parameter_vars

    point_path = tmp_path / "generic.json"
    values = {}
    for i, name in enumerate(parameter_vars(cubic)):
        values[name] = str(i + 1)
    point_path.write_text(json.dumps(values))
    code, out, _ = run_cli(
        capsys, "integral", cubic_path, "--point", str(point_path), "--order", "7"
    )
    assert code == 0
    assert "obstructed at degree" in out


def test_integral_rejects_floats(cubic_path, tmp_path, capsys, cubic):
    from resonaut.resonant import parameter_vars

    point_path = tmp_path / "floaty.json"
    values = {name: "0" for name in parameter_vars(cubic)}
    values["a100"] = 0.5
    point_path.write_text(json.dumps(values))
    code, _, err = run_cli(
        capsys, "integral", cubic_path, "--point", str(point_path), "--order", "4"
    )
    assert code == 1
    assert "exact" in err


def test_thread_cap_env(cubic_path, capsys, monkeypatch):
    monkeypatch.setenv("RESONAUT_THREADS", "4")
    code, _, _ = run_cli(capsys, "vars", cubic_path)
    assert code == 0
    assert cli.thread_cap == 4
    monkeypatch.setenv("RESONAUT_THREADS", "zero")
    code, _, err = run_cli(capsys, "vars", cubic_path)
    assert code == 1
    assert "RESONAUT_THREADS" in err


def test_json_matrices_match_text(cubic_path, capsys, cubic):
    from resonaut.resonant import M_matrix

    _, out, _ = run_cli(capsys, "--json", "matrices", cubic_path)
    payload = json.loads(out)
    assert payload["M"] == [list(r) for r in M_matrix(cubic)]
