import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from hecke_ds import checks
from hecke_ds.cli import EXIT_CAP, EXIT_INPUT, EXIT_OK, EXIT_SUITE, load_config, main
from hecke_ds.partitions import ETableau, central_character
from hecke_ds.segments import enumerate_mp


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ds_worked_example(capsys):
    code, out, _ = run(capsys, "ds", "--sigma", "4,3,3,2,1", "--m", "9/4")
    assert code == EXIT_OK
    assert out == "{[-7/4,9/4] [1/4] [5/4,13/4] [9/4,21/4]*}\n"
    code, out, _ = run(capsys, "ds", "--sigma", "2", "--m", "7/4", "--format", "json")
    data = json.loads(out)
    assert data["segments"] == [{"lo": "7/4", "hi": "11/4", "marked": True}]


def test_ds_trace_and_csv(capsys):
    code, out, _ = run(capsys, "ds", "--sigma", "4,3,3,2,1", "--m", "9/4", "--trace")
    assert code == EXIT_OK and out.count("\n") > 2
    code, out, _ = run(capsys, "ds", "--sigma", "1,1", "--m", "5/4", "--format", "csv")
    assert out.splitlines()[0] == "lo,hi,marked" and len(out.splitlines()) == 3


@pytest.mark.parametrize(
    "argv",
    [
        ("ds", "--sigma", "1,1", "--m", "1/2"),
        ("ds", "--sigma", "1,1", "--m", "0.25"),
        ("ds", "--sigma", "1,x", "--m", "1/4"),
        ("ds", "--sigma", "2,1"),
        ("springer", "--sigma", "2", "--m", "1/3"),
        ("orbits", "--m", "1/4"),
        ("orbits", "--sigma", "2", "--weights", "1/4", "--m", "1/4"),
        ("ds", "--sigma", "2", "--m", "1/4", "--format", "dot"),
    ],
)
def test_input_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_INPUT and out == "" and err.startswith("hecke-ds:")


def test_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "nothing-registered-name"])
    assert exc.value.code == 2


def test_orbits(capsys):
    code, out, _ = run(capsys, "orbits", "--sigma", "2", "--m", "1/4")
    assert code == EXIT_OK and out.startswith("digraph{") and out.count("[label=") == 4
    code, out, _ = run(capsys, "orbits", "--sigma", "1", "--m", "1/4")
    assert out.count("[label=") == 2 and out.count("->") == 1
    code, out, _ = run(capsys, "orbits", "--sigma", "2,1", "--m", "1/4", "--format", "json")
    cc = central_character(ETableau((2, 1), Fraction(1, 4)))
    assert len(json.loads(out)["nodes"]) == len(enumerate_mp(cc))
    code, out, _ = run(capsys, "orbits", "--weights", "1/4", "--m", "1/4", "--format", "json")
    assert len(json.loads(out)["nodes"]) == 2


def test_springer(capsys):
    code, out, _ = run(capsys, "springer", "--sigma", "4,3,3,2,1", "--m", "9/4", "--format", "json")
    data = json.loads(out)
    assert data["orbit"] == [1, 3, 9, 11, 15, 23] and data["agree"]
    assert data["bipartition_ls"] == data["bipartition_slooten"]
    code, out, _ = run(capsys, "springer", "--sigma", "1", "--m", "3/4")
    assert "(5)" in out and "agree      yes" in out
    code, out, _ = run(capsys, "springer", "--sigma", "5", "--m", "1/4", "--format", "json")
    data = json.loads(out)
    assert data["bipartition_ls"] == data["bipartition_slooten"]


@pytest.mark.parametrize("n,rows", [(2, 5), (0, 1), (4, 20)])
def test_tempered(capsys, n, rows):
    code, out, _ = run(capsys, "tempered", "--n", str(n), "--m", "3/4", "--format", "csv")
    assert code == EXIT_OK and len(out.splitlines()) == rows + 1


def test_profile(capsys):
    code, out, _ = run(capsys, "profile", "--sigma", "1,1", "--lo", "0", "--hi", "3/2")
    assert code == EXIT_OK and len(out.splitlines()) == 3


def test_check(capsys):
    code, out, _ = run(capsys, "check", "sgn-equivalence", "--n", "6")
    assert code == EXIT_OK and out.startswith("PASS")
    code, out, _ = run(capsys, "check", "springer", "--n", "8", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["passed"]


def test_check_failure_exit(capsys, monkeypatch):
    def broken(res):
        res.fail("forced")

    monkeypatch.setitem(checks.SUITES, "ladders", checks.Suite("ladders", broken, 1, "x"))
    code, out, _ = run(capsys, "check", "ladders")
    assert code == EXIT_SUITE and "forced" in out


def test_caps(capsys, monkeypatch, tmp_path):
    code, _, _ = run(capsys, "tempered", "--n", "13", "--m", "3/4")
    assert code == EXIT_CAP
    code, _, _ = run(capsys, "orbits", "--sigma", "1,1,1,1,1,1,1,1,1,1,1,1,1", "--m", "1/4")
    assert code == EXIT_CAP
    # ds itself is not bounded by the enumeration cap
    code, _, _ = run(capsys, "ds", "--sigma", "13", "--m", "1/4")
    assert code == EXIT_OK
    monkeypatch.setenv("HECKE_DS_N_CAP", "3")
    code, _, _ = run(capsys, "tempered", "--n", "4", "--m", "3/4")
    assert code == EXIT_CAP
    monkeypatch.setenv("HECKE_DS_N_CAP", "20")
    code, _, err = run(capsys, "tempered", "--n", "1", "--m", "3/4")
    assert code == EXIT_INPUT and "--force" in err
    code, _, _ = run(capsys, "--force", "tempered", "--n", "1", "--m", "3/4")
    assert code == EXIT_OK


def test_config(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("HECKE_DS_N_CAP", raising=False)
    cfg = tmp_path / "hecke.cfg"
    cfg.write_text("# defaults\ndefault_m = 9/4\nn_cap = 6\noutput_format = json\nsweep_grid = 1/4, 3/4\n")
    c = load_config(str(cfg))
    assert c.n_cap == 6 and c.output_format == "json" and len(c.sweep_grid) == 2
    code, out, _ = run(capsys, "--config", str(cfg), "ds", "--sigma", "4,3,3,2,1")
    assert code == EXIT_OK and json.loads(out)["m"] == "9/4"
    code, _, _ = run(capsys, "--config", str(cfg), "tempered", "--n", "7")
    assert code == EXIT_CAP
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    code, _, _ = run(capsys, "--config", str(bad), "tempered", "--n", "1", "--m", "3/4")
    assert code == EXIT_INPUT
    code, _, _ = run(capsys, "--config", str(tmp_path / "missing.cfg"), "tempered", "--n", "1", "--m", "3/4")
    assert code == EXIT_INPUT


@pytest.mark.parametrize(
    "argv",
    [
        ("ds", "--sigma", "4,3,3,2,1", "--m", "9/4", "--format", "json"),
        ("orbits", "--sigma", "2,1", "--m", "1/4"),
        ("tempered", "--n", "3", "--m", "3/4", "--format", "csv"),
        ("peel", "--sigma", "3,2", "--m", "5/4", "--format", "json"),
    ],
)
def test_deterministic(capsys, argv):
    first = run(capsys, *argv)[1]
    assert first and run(capsys, *argv)[1] == first


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "hecke_ds", "ds", "--sigma", "2", "--m", "7/4"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout == "{[7/4,11/4]*}\n"


def test_sweep(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("HECKE_DS_N_CAP", raising=False)
    code, out, _ = run(capsys, "sweep", "--n", "2", "--grid", "1/4,3/4,5/4", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["sigma", "m", "ds"]
    assert rows[1:] == [
        ["2", "1/4", "{[1/4,5/4]*}"],
        ["1,1", "1/4", "{[-3/4,1/4]}"],
        ["2", "3/4", "{[3/4,7/4]*}"],
        ["1,1", "3/4", "{[-1/4,3/4]*}"],
        ["2", "5/4", "{[5/4,9/4]*}"],
        ["1,1", "5/4", "{[1/4] [5/4]*}"],
    ]
    cfg = tmp_path / "grid.cfg"
    cfg.write_text("sweep_grid = 7/4\noutput_format = json\n")
    code, out, _ = run(capsys, "--config", str(cfg), "sweep", "--n", "3")
    assert code == EXIT_OK and len(json.loads(out)) == 3
    code, _, _ = run(capsys, "sweep", "--n", "2")
    assert code == EXIT_INPUT
    code, _, _ = run(capsys, "sweep", "--n", "2", "--grid", "1/2")
    assert code == EXIT_INPUT
    code, _, _ = run(capsys, "sweep", "--n", "13", "--grid", "1/4")
    assert code == EXIT_CAP
