"""Command-line interface: parsing, CSV/manifest output, exit codes.

All invocations go through ``main(argv)`` in process so exit codes and file
side effects are asserted directly; one subprocess test exercises the
installed console script end to end.
"""

from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

from bfmix.cli import (
    EXIT_NUMERICAL,
    EXIT_OK,
    EXIT_UNWRITABLE,
    EXIT_USAGE,
    _merge_negative_values,
    _parse_range,
    main,
)


def _read_csv(path):
    lines = path.read_text().splitlines()
    return lines[0], lines[1:]


# ----------------------------------------------------------------------------
# argument helpers
# ----------------------------------------------------------------------------


def test_parse_range_colon_form_includes_endpoints():
    assert _parse_range("0:2:0.5") == [0.0, 0.5, 1.0, 1.5, 2.0]
    assert _parse_range("-2:2:1") == [-2.0, -1.0, 0.0, 1.0, 2.0]


def test_parse_range_comma_form():
    assert _parse_range("0.1,1,10") == [0.1, 1.0, 10.0]
    assert _parse_range("3") == [3.0]


def test_parse_range_rejects_garbage():
    with pytest.raises(ValueError):
        _parse_range("abc")
    with pytest.raises(ValueError):
        _parse_range("0:1")  # needs start:stop:step


def test_merge_negative_values_glues_leading_dash():
    argv = ["phase", "--h", "-2:2:1", "--ratio", "0:1:0.5"]
    assert _merge_negative_values(argv) == ["phase", "--h=-2:2:1", "--ratio", "0:1:0.5"]
    # non-negative values and already-glued forms pass through untouched
    argv2 = ["phase", "--h=-1,0", "--ratio", "2"]
    assert _merge_negative_values(argv2) == argv2


def test_negative_range_accepted_end_to_end(tmp_path):
    out = tmp_path / "scan.csv"
    rc = main(["phase", "--regime", "strong", "--n", "6", "--l", "6",
               "--ratio", "0:1:0.5", "--h", "-1:1:1", "--out", str(out)])
    assert rc == EXIT_OK
    header, rows = _read_csv(out)
    assert header == "ratio,h,N_B,N_up,N_down,label"
    assert len(rows) == 9
    assert rows[0] == "0,-1,6,0,0,B"
    assert rows[6] == "1,-1,3,0,3,BF2"
    assert rows[8] == "1,1,3,3,0,BF1"


# ----------------------------------------------------------------------------
# subcommand happy paths
# ----------------------------------------------------------------------------


def test_ground_writes_numbers_roots_and_observables(tmp_path):
    out = tmp_path / "ground.csv"
    rc = main(["ground", "--case", "ffb", "--n", "4", "--m", "3", "--mp", "3",
               "--l", "4", "--c", "1", "--out", str(out)])
    assert rc == EXIT_OK
    header, rows = _read_csv(out)
    assert header == "kind,index,value"
    table = {}
    for line in rows:
        kind, idx, value = line.split(",")
        table.setdefault(kind, []).append(float(value))
    assert table["two_i"] == [-2.0, 0.0, 2.0, 4.0]
    assert table["two_j"] == [-3.0, -1.0, 1.0]
    assert table["two_jp"] == [-2.0, 0.0, 2.0]
    assert len(table["k"]) == 4 and len(table["lam"]) == 3 and len(table["mu"]) == 3
    assert table["E"][0] == pytest.approx(2.9034245354728134, rel=1e-12)
    assert table["P"][0] == pytest.approx(0.7853981633974483, rel=1e-12)


def test_ground_without_out_prints_to_stdout(capsys):
    rc = main(["ground", "--case", "bff", "--n", "2", "--l", "2", "--c", "1"])
    assert rc == EXIT_OK
    captured = capsys.readouterr()
    assert captured.out.splitlines()[0] == "kind,index,value"
    assert "E = " in captured.err and "P = " in captured.err


def test_ybe_check_passes_at_default_tolerance(tmp_path):
    out = tmp_path / "ybe.csv"
    rc = main(["ybe-check", "--cases", "bff", "--c", "1", "--num", "5",
               "--seed", "1", "--out", str(out)])
    assert rc == EXIT_OK
    header, rows = _read_csv(out)
    assert header == "case,c,alpha,beta,residual"
    assert len(rows) == 5
    assert all(float(line.split(",")[4]) < 1e-10 for line in rows)


def test_ybe_check_fails_at_impossible_tolerance(tmp_path):
    rc = main(["ybe-check", "--cases", "bff", "--c", "1", "--num", "5",
               "--seed", "1", "--tol", "1e-20", "--out", str(tmp_path / "y.csv")])
    assert rc == EXIT_NUMERICAL


def test_excite_sweeps_families(tmp_path):
    out = tmp_path / "exc.csv"
    rc = main(["excite", "--case", "bff", "--n", "4", "--l", "4", "--c", "1",
               "--family", "particle-hole", "--out", str(out)])
    assert rc == EXIT_OK
    header, rows = _read_csv(out)
    assert header == "family,param1,param2,p,de,status"
    assert len(rows) == 16
    for line in rows:
        family, _, _, _, de, status = line.split(",")
        assert family == "particle-hole"
        assert status == "ok"
        assert float(de) >= -1e-9


def test_density_sweeps_couplings(tmp_path):
    out = tmp_path / "den.csv"
    rc = main(["density", "--case", "bff", "--n", "6", "--l", "6",
               "--c", "100,1", "--out", str(out)])
    assert rc == EXIT_OK
    header, rows = _read_csv(out)
    assert header == "c,index,k_mid,rho"
    cs = {line.split(",")[0] for line in rows}
    assert cs == {"100", "1"}
    assert len(rows) == 10  # N - 1 = 5 gap midpoints per coupling


def test_thermo_writes_profile_and_dressed_energies(tmp_path):
    out = tmp_path / "th.csv"
    rc = main(["thermo", "--density", "1.0", "--c", "2.0", "--xi-points", "3",
               "--out", str(out)])
    assert rc == EXIT_OK
    header, rows = _read_csv(out)
    assert header == "kind,x,value"
    kinds = [line.split(",")[0] for line in rows]
    assert kinds[0] == "k_f" and kinds[1] == "energy_density"
    assert kinds.count("xi_h") == 3 and kinds.count("xi_c") == 3
    assert kinds.count("rho0") >= 200
    k_f = float(rows[0].split(",")[2])
    assert k_f == pytest.approx(1.8081260665908527, rel=1e-10)


# ----------------------------------------------------------------------------
# manifest and reproducibility
# ----------------------------------------------------------------------------


def test_manifest_written_next_to_output(tmp_path):
    out = tmp_path / "ground.csv"
    rc = main(["ground", "--case", "ffb", "--n", "4", "--m", "3", "--mp", "3",
               "--l", "4", "--c", "1", "--out", str(out)])
    assert rc == EXIT_OK
    manifest_path = tmp_path / "ground.csv.manifest.json"
    assert manifest_path.exists()
    text = manifest_path.read_text()
    assert text.endswith("\n")
    manifest = json.loads(text)
    assert manifest["subcommand"] == "ground"
    assert manifest["inputs"] == {"case": "ffb", "n": 4, "m": 3, "mp": 3,
                                  "L": 4.0, "c": 1.0}
    assert manifest["threads"] == 1
    assert "newton_tol" in manifest["tolerances"]
    assert "tie_break" in manifest
    # keys are sorted so the file is byte-stable
    assert text == json.dumps(manifest, sort_keys=True, indent=2) + "\n"


def test_reruns_are_byte_identical(tmp_path):
    args = ["excite", "--case", "bff", "--n", "4", "--l", "4", "--c", "1",
            "--family", "all"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(out1)]) == EXIT_OK
    assert main(args + ["--out", str(out2)]) == EXIT_OK
    assert out1.read_bytes() == out2.read_bytes()


def test_thread_count_does_not_change_output(tmp_path, monkeypatch):
    args = ["excite", "--case", "bff", "--n", "4", "--l", "4", "--c", "1",
            "--family", "all"]
    out1, out3 = tmp_path / "t1.csv", tmp_path / "t3.csv"
    monkeypatch.setenv("BFMIX_THREADS", "1")
    assert main(args + ["--out", str(out1)]) == EXIT_OK
    monkeypatch.setenv("BFMIX_THREADS", "3")
    assert main(args + ["--out", str(out3)]) == EXIT_OK
    assert out1.read_bytes() == out3.read_bytes()


# ----------------------------------------------------------------------------
# exit codes
# ----------------------------------------------------------------------------


def test_usage_errors_exit_2(capsys):
    assert main(["ground", "--case", "xyz", "--n", "4", "--l", "4", "--c", "1"]) == EXIT_USAGE
    assert main(["ground", "--case", "bff", "--n", "4", "--l", "4", "--c", "1",
                 "--bogus", "1"]) == EXIT_USAGE
    assert main(["phase", "--regime", "weak", "--ratio", "abc", "--h", "0"]) == EXIT_USAGE
    assert main([]) == EXIT_USAGE
    capsys.readouterr()


def test_invalid_quantum_numbers_exit_2(capsys):
    # m > n is rejected during validation, not by argparse
    assert main(["ground", "--case", "bff", "--n", "3", "--m", "5",
                 "--l", "3", "--c", "1"]) == EXIT_USAGE
    capsys.readouterr()


def test_nonconvergent_sector_exits_3(capsys):
    # this composition admits no convergent real-root candidate
    rc = main(["ground", "--case", "ffb", "--n", "5", "--m", "4", "--mp", "2",
               "--l", "5", "--c", "1"])
    assert rc == EXIT_NUMERICAL
    assert "numerical failure" in capsys.readouterr().err


def test_unwritable_output_exits_4(tmp_path, capsys):
    target = tmp_path / "missing_dir" / "out.csv"
    rc = main(["ground", "--case", "bff", "--n", "2", "--l", "2", "--c", "1",
               "--out", str(target)])
    assert rc == EXIT_UNWRITABLE
    assert "cannot write" in capsys.readouterr().err


# ----------------------------------------------------------------------------
# installed console script
# ----------------------------------------------------------------------------


@pytest.mark.skipif(shutil.which("bfmix") is None, reason="console script not installed")
def test_console_script_runs(tmp_path):
    out = tmp_path / "g.csv"
    proc = subprocess.run(
        ["bfmix", "ground", "--case", "bff", "--n", "2", "--l", "2", "--c", "1",
         "--out", str(out)],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0
    assert out.read_text().splitlines()[0] == "kind,index,value"
