import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "latticecontact.cli"]


def run_cli(*args, **kwargs):
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, timeout=600, **kwargs
    )


def test_solve_fcc_json():
    proc = run_cli("solve", "--lattice", "fcc", "--n", "6", "--radius", "1", "--json")
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert len(lines) == 1  # stdout carries exactly one JSON object
    payload = json.loads(lines[0])
    assert payload["contact_number"] == 12
    assert payload["lattice"] == "fcc"
    assert payload["n"] == 6
    assert payload["optimal"] is True
    assert payload["bound"] == pytest.approx(23.897372268884737)
    assert sorted(map(tuple, payload["witness"]))  # six coefficient triples
    assert len(payload["witness"]) == 6


def test_solve_sc_8_json():
    proc = run_cli("solve", "--lattice", "sc", "--n", "8", "--radius", "1", "--json")
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["contact_number"] == 12


def test_solve_human_output():
    proc = run_cli("solve", "--lattice", "fcc", "--n", "4")
    assert proc.returncode == 0
    assert "contact number: 6" in proc.stdout
    assert "optimal: yes" in proc.stdout


def test_solve_usage_errors():
    assert run_cli("solve", "--lattice", "fcc", "--n", "0").returncode == 2
    assert run_cli("solve", "--lattice", "fcc").returncode == 2
    assert run_cli("solve", "--lattice", "fcc", "--n", "3", "--algorithm", "magic").returncode == 2


def test_solve_domain_errors():
    proc = run_cli("solve", "--lattice", "hcp", "--n", "3")
    assert proc.returncode == 3
    assert "error" in proc.stderr
    # exhaustive on the n=7 box exceeds the subset cap
    proc = run_cli("solve", "--lattice", "fcc", "--n", "7", "--algorithm", "exhaustive")
    assert proc.returncode == 3


def test_solve_lattice_file(tmp_path):
    spec = tmp_path / "sc.lat"
    spec.write_text("# simple cubic at diameter spacing\ndimension 3\nradius 1.0\n"
                    "basis 2 0 0\nbasis 0 2 0\nbasis 0 0 2\n")
    proc = run_cli("solve", "--lattice", str(spec), "--n", "4", "--json")
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["contact_number"] == 4

    preset_file = tmp_path / "preset.lat"
    preset_file.write_text("preset fcc\nradius 1.0\n")
    proc = run_cli("solve", "--lattice", str(preset_file), "--n", "6", "--json")
    assert json.loads(proc.stdout)["contact_number"] == 12


def test_solve_missing_lattice_file():
    assert run_cli("solve", "--lattice", "/no/such/file.lat", "--n", "3").returncode == 3


def test_solve_export_xyz(tmp_path):
    out = tmp_path / "witness.xyz"
    proc = run_cli("solve", "--lattice", "fcc", "--n", "6", "--export-xyz", str(out))
    assert proc.returncode == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "6"
    assert "contacts=12" in lines[1]


def test_solve_box_override():
    proc = run_cli("solve", "--lattice", "fcc", "--n", "6", "--box-k", "1", "--json")
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["contact_number"] == 12


def test_bounds_values():
    proc = run_cli("bounds", "--n", "1000")
    assert proc.returncode == 0
    assert "5907.4000" in proc.stdout
    assert "5633.4678" in proc.stdout

    proc = run_cli("bounds", "--n", "8", "--json")
    payload = json.loads(proc.stdout)
    assert payload["general_bound"] == pytest.approx(44.296)
    assert payload["lattice_bound"] == pytest.approx(33.33871061493943)


def test_bounds_only_flags():
    payload = json.loads(run_cli("bounds", "--n", "10", "--lattice-only", "--json").stdout)
    assert payload["general_bound"] is None and payload["lattice_bound"] is not None
    payload = json.loads(run_cli("bounds", "--n", "10", "--general-only", "--json").stdout)
    assert payload["lattice_bound"] is None and payload["general_bound"] is not None
    assert run_cli("bounds", "--n", "10", "--general-only", "--lattice-only").returncode == 2


def test_bounds_small_n_domain_error():
    proc = run_cli("bounds", "--n", "2")
    assert proc.returncode == 3
    assert "n > 2" in proc.stderr


def test_octa_command():
    payload = json.loads(run_cli("octa", "--k", "2", "--json").stdout)
    assert payload == {
        "k": 2, "n": 6, "contacts": 12,
        "lattice_bound": pytest.approx(23.897372268884737),
    }
    payload = json.loads(run_cli("octa", "--k", "1", "--json").stdout)
    assert payload["n"] == 1 and payload["contacts"] == 0
    assert payload["lattice_bound"] is None
    payload = json.loads(run_cli("octa", "--k", "4", "--json").stdout)
    assert payload["n"] == 44 and payload["contacts"] == 168


def test_analyze_roundtrip(tmp_path):
    out = tmp_path / "octa.xyz"
    assert run_cli("octa", "--k", "2", "--export-xyz", str(out)).returncode == 0
    payload = json.loads(
        run_cli("analyze", "--xyz", str(out), "--radius", "1", "--crystal", "--json").stdout
    )
    assert payload["atoms"] == 6
    assert payload["bonds"] == 12
    assert payload["crystal_bound"] == pytest.approx(23.897372268884737)
    assert payload["amorphous_bound"] == pytest.approx(32.94241536752357)

    # without --crystal only the general bound applies
    payload = json.loads(run_cli("analyze", "--xyz", str(out), "--json").stdout)
    assert payload["crystal_bound"] is None


def test_analyze_tetrahedron(tmp_path):
    s = 2.0 / 2.0**0.5
    rows = [(0, 0, 0), (s, s, 0), (s, 0, s), (0, s, s)]
    xyz = tmp_path / "tet.xyz"
    xyz.write_text("4\ntet\n" + "\n".join(f"C {x:.6f} {y:.6f} {z:.6f}" for x, y, z in rows) + "\n")
    payload = json.loads(run_cli("analyze", "--xyz", str(xyz), "--json").stdout)
    assert payload["bonds"] == 6
    assert payload["amorphous_bound"] == pytest.approx(21.666626215594697)


def test_analyze_errors(tmp_path):
    empty = tmp_path / "empty.xyz"
    empty.write_text("")
    assert run_cli("analyze", "--xyz", str(empty)).returncode == 3
    assert run_cli("analyze", "--xyz", str(tmp_path / "missing.xyz")).returncode == 3


def test_json_mode_keeps_stdout_clean(tmp_path):
    out = tmp_path / "w.xyz"
    proc = run_cli(
        "solve", "--lattice", "fcc", "--n", "5", "--json", "--export-xyz", str(out)
    )
    assert proc.returncode == 0
    json.loads(proc.stdout)  # exactly one object, nothing else
    assert "wrote witness" in proc.stderr


def test_identical_flags_identical_bytes():
    first = run_cli("solve", "--lattice", "bcc", "--n", "5", "--json").stdout
    second = run_cli("solve", "--lattice", "bcc", "--n", "5", "--json").stdout
    assert first == second
