import csv
import io
import json
import subprocess
import sys

import pytest

from smoothgaps.cli import RunConfig, config_from_args, main


def run_cli(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.reader(io.StringIO("\n".join(lines))))


def test_psi_row(capsys):
    code, out, _ = run_cli(capsys, "psi", "--x", "100", "--y", "5")
    assert code == 0
    header, row = csv_rows(out)
    assert header == ["x", "y", "psi", "ennola_main", "in_regime"]
    assert row[:3] == ["100", "5.0", "34"] and row[4] == "false"


def test_gaps_rows(capsys):
    code, out, _ = run_cli(capsys, "gaps", "--bound", "const:3", "--limit", "13")
    rows = csv_rows(out)
    assert rows[0] == ["i", "n_i", "n_next", "t", "p_of_n", "y_at_n", "r_at_sqrt", "kappa"]
    assert len(rows) == 8
    assert rows[-1][1:4] == ["9", "12", "3"]


def test_config_comment_embeds_canonical_config(capsys):
    _, out, _ = run_cli(capsys, "gaps", "--bound", "const:3", "--limit", "13")
    first = out.splitlines()[0]
    assert first.startswith("# config: ")
    cfg = RunConfig.from_canonical(first[len("# config: "):])
    assert cfg.bound == {"kind": "const", "params": [3.0]} and cfg.limit == 13
    assert cfg.params["c"] == 2.0


def test_config_round_trip():
    cfg = config_from_args(["pigeonhole", "--bound", "powlog:1,0.5", "--log-x", "81", "100", "--c1", "3", "--eps", "0.25"])
    again = RunConfig.from_canonical(cfg.canonical())
    assert again == cfg and again.canonical() == cfg.canonical()
    assert cfg.params["c1"] == 3 and cfg.params["epsilon"] == 0.25


def test_pigeonhole_jsonl(capsys):
    code, out, _ = run_cli(capsys, "pigeonhole", "--bound", "const:3", "--log-x", "100", "--format", "jsonl")
    assert code == 0
    recs = [json.loads(ln) for ln in out.splitlines()]
    assert all(r["schema_version"] == 1 for r in recs)
    assert recs[0]["type"] == "config"
    res = recs[1]
    assert res["regime"] == "constructive" and res["eq22_holds"] is True
    a, b = (int(v) for v in res["pair"])
    assert b - a == int(res["gap"]) >= 1


def test_abc_schema(capsys):
    _, out, _ = run_cli(capsys, "abc", "--bound", "const:3", "--limit", "100", "--top", "3")
    rows = csv_rows(out)
    assert rows[0] == ["n_i", "n_next", "g", "a", "b", "c", "radical", "quality"]
    assert ["8", "9", "1", "8", "1", "9", "6"] in [r[:7] for r in rows[1:]]


def test_bounds_table(capsys):
    code, out, _ = run_cli(capsys, "bounds", "--n", "1000000", "--y", "3", "--c", "1", "--heights", "3", "3", "--B", "3")
    assert code == 0
    rows = {r[0]: r for r in csv_rows(out)[1:]}
    assert float(rows["thm1_lower"][1]) == pytest.approx(-26.474365064145774)
    assert float(rows["matveev_rhs"][1]) == pytest.approx(-5.30387584057563)


def test_report_and_sequence_and_scan(capsys, tmp_path):
    out_path = tmp_path / "r.csv"
    code, out, _ = run_cli(capsys, "report", "--bound", "const:5", "--limit", "1000", "--out", str(out_path))
    assert code == 0 and out == ""
    rows = csv_rows(out_path.read_text())
    assert rows[0][0] == "n_i" and len(rows) > 10
    code, out, _ = run_cli(capsys, "sequence", "--bound", "logmul:1", "--limit", "20")
    assert [r[1] for r in csv_rows(out)[1:]] == ["1", "2", "3", "4", "6", "8", "9", "12", "16", "18"]
    code, out, _ = run_cli(capsys, "scan", "--bound", "const:5", "--limit", "10000", "--format", "jsonl")
    rec = json.loads(out.splitlines()[1])
    assert rec["argmax_kappa_pair"] == [80, 81]


def test_step_file(capsys, tmp_path):
    f = tmp_path / "steps.csv"
    f.write_text("threshold,value\n10,5\n")
    code, out, _ = run_cli(capsys, "sequence", "--bound", f"step:{f}", "--limit", "15")
    assert [r[1] for r in csv_rows(out)[1:]] == ["1", "2", "3", "4", "6", "8", "9", "10", "12", "15"]


def test_byte_identical_across_runs(capsys):
    args = ["gaps", "--bound", "logmul:1", "--limit", "50000", "--segment", "4096"]
    _, a, _ = run_cli(capsys, *args, "--threads", "1")
    _, b, _ = run_cli(capsys, *args, "--threads", "1")
    assert a == b
    _, c, _ = run_cli(capsys, *args, "--threads", "4")
    # only the embedded config differs
    assert a.splitlines()[1:] == c.splitlines()[1:]


def test_threads_env_fallback(monkeypatch):
    monkeypatch.setenv("SMOOTHGAPS_THREADS", "3")
    assert config_from_args(["gaps", "--bound", "const:3", "--limit", "10"]).threads == 3
    assert config_from_args(["gaps", "--bound", "const:3", "--limit", "10", "--threads", "2"]).threads == 2


@pytest.mark.parametrize(
    "args, code, kind",
    [
        (["gaps", "--bound", "nope:3", "--limit", "10"], 1, "usage"),
        (["gaps", "--limit", "10"], 1, "usage"),
        (["frobnicate"], 1, "usage"),
        (["gaps", "--bound", "const:3", "--limit", str(2**64)], 2, "CapacityError"),
        (["gaps", "--bound", "const:3", "--limit", "100", "--segment", str(2**25)], 2, "CapacityError"),
    ],
)
def test_exit_codes(capsys, args, code, kind):
    got, out, err = run_cli(capsys, *args)
    assert got == code
    assert out == ""
    rec = json.loads(err.strip().splitlines()[-1])
    assert rec["error"] == kind and rec["exit_code"] == code


def test_construction_failed_exit_code(capsys, monkeypatch):
    import smoothgaps.cli as cli_mod
    from smoothgaps.errors import ConstructionFailed

    def boom(*a, **k):
        raise ConstructionFailed("densest bin too small")

    monkeypatch.setattr(cli_mod, "find_small_gap", boom)
    code, _, err = run_cli(capsys, "pigeonhole", "--bound", "const:3", "--log-x", "81")
    assert code == 3 and json.loads(err)["error"] == "ConstructionFailed"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "smoothgaps", "psi", "--x", "10", "--y", "2"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines()[-1].startswith("10,2.0,4,")


def test_jsonl_big_ints_are_strings(capsys):
    code, out, _ = run_cli(capsys, "psi", "--log-x", "60", "--y", "5", "--format", "jsonl")
    assert code == 0
    rec = json.loads(out.splitlines()[-1])
    assert isinstance(rec["x"], str) and int(rec["x"]) > 2**63
    assert rec["psi"] == 31934
