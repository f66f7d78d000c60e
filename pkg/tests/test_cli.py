import json
import re
import subprocess
import sys
from collections import Counter

import pytest

from ratschur import cli


def invoke(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def invoke_json(capsys, *argv):
    code, out, _ = invoke(capsys, *argv)
    return code, json.loads(out)


def test_weights_trivial(capsys):
    code, rep = invoke_json(capsys, "weights", "--n", "3", "--r", "0", "--s", "0")
    assert code == 0
    assert rep["schema"] == "ratschur/1" and rep["command"] == "weights"
    assert rep["weights"] == [[0, 0, 0]]


def test_weights_dominant(capsys):
    code, rep = invoke_json(capsys, "weights", "--n", "3", "--r", "5", "--s", "0", "--dominant")
    assert code == 0
    assert rep["weights"] == [[5, 0, 0], [4, 1, 0], [3, 2, 0], [3, 1, 1], [2, 2, 1]]
    assert rep["checks"]["saturated"]


def test_weyl_dim(capsys):
    code, rep = invoke_json(capsys, "weyl-dim", "--n", "3", "--lambda", "1,0,-1")
    assert (code, rep["dim"]) == (0, 8)


def test_schur_dim(capsys):
    code, rep = invoke_json(capsys, "schur-dim", "--n", "3", "--d", "3")
    assert code == 0
    assert rep["dim"] == rep["binomial"] == 165
    assert rep["checks"]["rank_eq_binomial"]


def test_rational_quotient_example(capsys):
    code, rep = invoke_json(capsys, "rational", "--n", "3", "--r", "1", "--s", "1", "--method", "quotient")
    assert code == 0
    assert rep["dim"] == 65
    assert rep["methods"]["quotient"]["kernel_dim"] == 100
    assert rep["weyl_table"] == [{"lambda": "1,0,-1", "dim": 8}, {"lambda": "0,0,0", "dim": 1}]


def test_rational_all_methods_agree(capsys):
    code, rep = invoke_json(
        capsys, "rational", "--n", "3", "--r", "2", "--s", "1",
        "--method", "quotient", "--method", "envelope", "--method", "centralizer",
    )
    assert code == 0
    assert {m: v["dim"] for m, v in rep["methods"].items()} == {"quotient": 270, "envelope": 270, "centralizer": 270}
    assert all(all(row.values()) for row in rep["agreement"].values())


def test_centralizer_not_asserted_below_bound(capsys):
    code, rep = invoke_json(capsys, "rational", "--n", "2", "--r", "2", "--s", "1", "--method", "envelope", "--method", "centralizer")
    assert code == 0
    assert rep["methods"]["centralizer"]["swd_hypothesis"] is False
    assert "centralizer_eq_weyl_sum" not in rep["checks"]


def test_brauer_mult(capsys):
    c = "t1-t-1, b1-b-1"
    code, rep = invoke_json(capsys, "brauer-mult", "--r", "1", "--s", "1", "--d1", c, "--d2", c)
    assert code == 0
    assert rep["loops"] == 1
    assert rep["product"] == [{"diagram": c, "coefficient": {"1": "1"}}]


def test_swd_example(capsys):
    code, rep = invoke_json(capsys, "swd", "--n", "3", "--r", "2", "--s", "1")
    assert code == 0
    assert rep["d2_brauer_commutant"] == rep["d4_envelope"] == 270
    assert rep["d1_brauer_image"] == rep["d3_gl_commutant"] == 6
    assert rep["multiplicative"] and rep["multiplicative_samples"] == 50


@pytest.mark.parametrize(
    "argv, key",
    [(["relations", "--n", "3", "--d", "3"], "g"), (["relations", "--n", "3", "--r", "1", "--s", "1"], "g'")],
)
def test_relations(capsys, argv, key):
    code, rep = invoke_json(capsys, *argv)
    assert code == 0 and rep["all_hold"] and rep["relations"][key]


@pytest.mark.parametrize(
    "argv",
    [
        ["rational", "--n", "3", "--r", "1"],
        ["weights", "--n", "1", "--r", "1", "--s", "1"],
        ["weyl-dim", "--n", "3", "--lambda", "0,1,0"],
        ["weyl-dim", "--n", "3", "--lambda", "a,b"],
        ["brauer-mult", "--r", "1", "--s", "1", "--d1", "t1-b-1, t-1-b1", "--d2", "t1-b1, t-1-b-1"],
        ["relations", "--n", "3", "--d", "2", "--r", "1", "--s", "1"],
        ["schur-dim", "--n", "3", "--d", "6"],
        ["rational", "--n", "3", "--r", "2", "--s", "2", "--method", "quotient"],
        ["swd", "--n", "3", "--r", "2", "--s", "2"],
        ["frobnicate"],
        ["weights", "--n", "3", "--r", "x", "--s", "0"],
    ],
)
def test_invalid_input_exit_two(capsys, argv):
    code, out, _ = invoke(capsys, *argv)
    rep = json.loads(out)
    assert code == 2
    assert rep["ok"] is False and rep["error"]["message"]


def test_failed_assertion_exit_one(capsys, monkeypatch):
    monkeypatch.setattr(cli.brauer, "commuting_actions_check", lambda n, r, s: False)
    code, rep = invoke_json(capsys, "swd", "--n", "3", "--r", "1", "--s", "1")
    assert code == 1 and rep["ok"] is False


def test_slow_tier_unlocks(capsys):
    code, rep = invoke_json(capsys, "rational", "--n", "3", "--r", "2", "--s", "2", "--method", "envelope")
    assert code == 0 and rep["dim"] == 994


@pytest.mark.slow
def test_slow_tier_degree_six(capsys):
    code, rep = invoke_json(capsys, "schur-dim", "--n", "3", "--d", "6", "--tier", "slow")
    assert code == 0 and rep["dim"] == 3003


ALL_COMMANDS = [
    ["weights", "--n", "3", "--r", "1", "--s", "1", "--dominant"],
    ["weyl-dim", "--n", "3", "--lambda", "2,1,0"],
    ["schur-dim", "--n", "2", "--d", "3"],
    ["rational", "--n", "3", "--r", "1", "--s", "1", "--method", "quotient", "--method", "envelope"],
    ["brauer-mult", "--r", "2", "--s", "1", "--d1", "t2-t-1, b1-b-1, t1-b2", "--d2", "t1-t-1, b2-b-1, t2-b1"],
    ["swd", "--n", "3", "--r", "1", "--s", "1", "--seed", "5"],
    ["relations", "--n", "2", "--r", "1", "--s", "1"],
]


@pytest.mark.parametrize("argv", ALL_COMMANDS, ids=lambda a: a[0])
def test_byte_identical_reruns(capsys, argv):
    _, first, _ = invoke(capsys, *argv)
    _, second, _ = invoke(capsys, *argv)
    assert first == second


@pytest.mark.parametrize("argv", ALL_COMMANDS, ids=lambda a: a[0])
def test_text_and_json_report_same_numbers(capsys, argv):
    code_j, as_json, _ = invoke(capsys, *argv)
    code_t, as_text, _ = invoke(capsys, *argv, "--format", "text")
    assert code_j == code_t == 0
    numbers = lambda s: Counter(re.findall(r"-?\d+", s))
    assert numbers(as_json) == numbers(as_text)
    assert "ok: true" in as_text


def test_console_script_stdout_only():
    proc = subprocess.run(
        [sys.executable, "-m", "ratschur.cli", "weyl-dim", "--n", "3", "--lambda", "3,0,0"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["dim"] == 10
    assert proc.stderr == ""


def test_verbose_diagnostics_go_to_stderr():
    proc = subprocess.run(
        [sys.executable, "-m", "ratschur.cli", "weyl-dim", "--n", "3", "--lambda", "3,0,0", "-v"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["dim"] == 10
    assert "finished" in proc.stderr
