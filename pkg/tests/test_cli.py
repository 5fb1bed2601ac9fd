"""Command line client: exit codes, output bytes, and file side effects."""

import io
import json
import subprocess
import sys
from contextlib import redirect_stderr, redirect_stdout

import pytest

from ddchaos.cli import main
from ddchaos.reporting import TRACE_HEADER


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def test_list_shows_all_scenarios():
    code, out, _ = run_cli(["list"])
    assert code == 0
    lines = [l for l in out.splitlines() if l.strip()]
    assert len(lines) >= 18
    assert any(l.startswith("two-speed-forward-shifts") for l in lines)


def test_run_by_alias_reports_success():
    code, out, _ = run_cli(["run", "totanr"])
    assert code == 0
    body = json.loads(out)
    assert body["scenario"] == "alternating-diagonals"
    assert body["all_match"] is True
    assert body["seed"] == 20240717


def test_run_output_is_byte_stable():
    a = run_cli(["run", "jump-shift-chain"])
    b = run_cli(["run", "jump-shift-chain"])
    assert a == b
    assert a[0] == 0


def test_run_gallery_truth_vector():
    code, out, _ = run_cli(["run", "example-2"])
    assert code == 0
    body = json.loads(out)
    verdicts = {
        int(c["label"].split()[1]): c["actual"]
        for c in body["claims"]
        if c["label"].startswith("condition ")
    }
    assert {i for i, v in verdicts.items() if v} == {2, 3, 4, 5, 6, 10, 11, 12}


def test_run_unknown_scenario_exits_2():
    code, out, err = run_cli(["run", "nonexistent"])
    assert code == 2
    assert "unknown scenario" in err


def test_run_mismatch_exits_1():
    # an absurd divergence gate empties every upper set, so the stored
    # expected-true condition claims cannot match
    code, out, _ = run_cli(
        ["run", "alternating-diagonals", "--horizon", "2000", "--sigma", "1000000000"]
    )
    assert code == 1
    body = json.loads(out)
    assert body["all_match"] is False


def test_describe_cites_run_lengths():
    code, out, _ = run_cli(["describe", "sunce"])
    assert code == 0
    assert "b1 = 2" in out
    assert "a1 = 18" in out
    body = json.loads(out)
    assert body["name"] == "two-speed-forward-shifts"


def test_describe_unknown_exits_2():
    code, _, err = run_cli(["describe", "wat"])
    assert code == 2
    assert "unknown scenario" in err


def test_trace_writes_csv(tmp_path):
    target = tmp_path / "trace.csv"
    code, out, _ = run_cli(
        ["trace", "alternating-diagonals", "--horizon", "150", "--out", str(target)]
    )
    assert code == 0
    assert str(target) in out
    text = target.read_text()
    assert text.splitlines()[0] == TRACE_HEADER
    # second table carries the checkpoint densities
    assert "\n\ncheckpoint,j," in text


def test_trace_plot_table(tmp_path):
    target = tmp_path / "plot.csv"
    code, _, _ = run_cli(
        [
            "trace",
            "alternating-diagonals",
            "--horizon",
            "150",
            "--plot",
            "--out",
            str(target),
        ]
    )
    assert code == 0
    assert target.read_text().splitlines()[0].startswith("k,upper_density_1")


def test_run_with_out_writes_report_and_trace(tmp_path):
    target = tmp_path / "report.json"
    code, _, _ = run_cli(
        ["run", "shared-upper-split-lower", "--out", str(target)]
    )
    assert code == 0
    body = json.loads(target.read_text())
    assert body["all_match"] is True
    sibling = target.with_suffix(".csv")
    assert sibling.exists()
    assert sibling.read_text().splitlines()[0] == TRACE_HEADER


def test_config_file_sets_defaults_flags_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"horizon": 300, "delta": 0.1}))
    code, out, _ = run_cli(
        ["run", "alternating-diagonals", "--config", str(cfg), "--delta", "0.25"]
    )
    assert code == 0
    body = json.loads(out)
    assert body["parameters"]["horizon"] == 300
    assert body["parameters"]["delta"] == 0.25


def test_bad_config_exits_2(tmp_path):
    cfg = tmp_path / "broken.json"
    cfg.write_text("{not json")
    code, _, err = run_cli(["run", "totanr", "--config", str(cfg)])
    assert code == 2
    assert err


def test_density_with_inline_json():
    code, out, _ = run_cli(
        ["density", "--set", '{"kind": "exact", "progressions": [[1, 2]]}']
    )
    assert code == 0
    assert json.loads(out)["density_fraction"] == "1/2"


def test_density_with_file_argument(tmp_path):
    spec = tmp_path / "set.json"
    spec.write_text('{"kind": "members", "members": [1, 2], "horizon": 10}')
    code, out, _ = run_cli(["density", "--set", "@" + str(spec)])
    assert code == 0
    assert json.loads(out)["count"] == 2


def test_density_bad_json_exits_2():
    code, _, err = run_cli(["density", "--set", "{oops"])
    assert code == 2
    assert err


def test_classify_scenario_vector():
    payload = json.dumps(
        {
            "scenario": "uniform-weight-shifts",
            "vector": [[80, 1.0]],
            "condition": 3,
            "horizon": 60,
        }
    )
    code, out, _ = run_cli(["classify", "--scenario", payload])
    assert code == 0
    body = json.loads(out)
    assert body["condition"] == 3


def test_classify_unknown_scenario_exits_2():
    payload = json.dumps({"scenario": "nope", "vector": [[1, 1.0]]})
    code, _, err = run_cli(["classify", "--scenario", payload])
    assert code == 2


def test_missing_subcommand_exits_2():
    code, _, err = run_cli([])
    assert code == 2
    assert "usage" in err.lower()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ddchaos", "list"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert "two-speed-forward-shifts" in proc.stdout
