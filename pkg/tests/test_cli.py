"""Command-line surface: exit codes, determinism, config precedence."""

import json
import os
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "sp4lab.cli"]


def run(*args, env_extra=None, stdin=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(CLI + list(args), capture_output=True, text=True,
                          env=env, input=stdin)


def jsonl(text):
    return [json.loads(line) for line in text.strip().splitlines() if line]


def test_field_info_and_usage_errors():
    res = run("field-info", "--field", "F4((t))")
    assert res.returncode == 0
    assert json.loads(res.stdout)["q"] == 4
    res = run("field-info", "--field", "Q4")
    assert res.returncode == 2
    res = run("suite", "--profile", "nonexistent")
    assert res.returncode == 2
    res = run("suite", "--profile", "quick", "--mutation", "bogus")
    assert res.returncode == 2
    res = run("no-such-command")
    assert res.returncode == 2


def test_cartan_roundtrip_via_stdin():
    mat = json.dumps([["1", "0", "0", "0"], ["0", "1", "0", "0"],
                      ["0", "0", "1", "0"], ["0", "0", "0", "1"]])
    res = run("cartan", "--field", "Q3", "--matrix", "-", stdin=mat)
    assert res.returncode == 0
    assert json.loads(res.stdout)["cell"] == [0, 0]
    bad = json.dumps([["1", "0", "0", "0"], ["0", "1", "0", "0"],
                      ["0", "0", "1", "0"], ["0", "0", "0", "3"]])
    res = run("cartan", "--field", "Q3", "--matrix", "-", stdin=bad)
    assert res.returncode == 2
    assert "not symplectic" in res.stderr


def test_witness_command():
    res = run("witness", "--field", "Q3", "--lemma", "SPHER01",
              "--i", "3", "--j", "1", "--eps", "1")
    assert res.returncode == 0
    dump = json.loads(res.stdout)
    assert dump["expected_cell"] == [3, 2] == dump["observed_cell"]
    res = run("witness", "--field", "Q2", "--lemma", "SPHER01",
              "--i", "2", "--j", "1")
    assert res.returncode == 2


def test_verify_command_exit_codes():
    res = run("verify", "SPHER01", "--field", "Q3", "--i", "3", "--j", "1")
    assert res.returncode == 0
    assert jsonl(res.stdout)[0]["status"] == "pass"
    res = run("verify", "SPHER01", "--field", "Q3", "--i", "3", "--j", "1",
              "--checks", "identities", "--n", "60",
              "--mutation", "minor-row-pair")
    assert res.returncode == 1
    assert jsonl(res.stdout)[0]["status"] == "violated"


def test_decompose_command():
    mat = json.dumps([["1", "0", "0", "0"], ["0", "1", "0", "0"],
                      ["0", "0", "1", "0"], ["3", "0", "0", "1"]])
    res = run("decompose", "--field", "Q3", "--matrix", mat)
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert out["block_count"] == 2
    assert [f["tag"] for f in out["factors"]] == ["K1", "K2", "K1"]


def test_zigzag_commands():
    res = run("zigzag", "plan", "--start", "9,2")
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert out["cells"][:3] == [[9, 2], [9, 3], [9, 4]]
    res = run("zigzag", "bound", "--alpha", "0.7", "--beta", "0.1",
              "--start", "12,3")
    assert res.returncode == 0
    out = json.loads(res.stdout)
    assert out["rate"] == "1/2"
    res = run("zigzag", "bound", "--alpha", "0.4", "--beta", "0.3",
              "--start", "12,3")
    assert res.returncode == 2  # inadmissible rates


def test_parity_and_fourier_commands():
    res = run("parity", "--field", "F2((t))", "--depth", "1")
    assert res.returncode == 0
    assert json.loads(res.stdout)["status"] == "pass"
    res = run("parity", "--field", "Q3", "--depth", "1")
    assert res.returncode == 2
    res = run("fourier-norm", "--field", "Q2", "--h", "1", "--space", "l2:1")
    assert res.returncode == 0
    assert json.loads(res.stdout)["lower"] == pytest.approx(2 ** -0.5)
    res = run("fft-check", "--field", "Q2", "--h", "1", "--n", "2")
    assert res.returncode == 0
    res = run("type-const", "--space", "l2:4", "--p", "2.0", "--trials", "5")
    assert res.returncode == 0
    res = run("type-const", "--space", "l2:4", "--p", "0.5")
    assert res.returncode == 2


def test_config_file_and_env_precedence(tmp_path):
    conf = tmp_path / "sp4lab.conf"
    conf.write_text("field=Q5\nformat=json\nseed=9\n")
    res = run("field-info", "--config", str(conf))
    assert json.loads(res.stdout)["field"] == "Q5"
    # flags override config
    res = run("field-info", "--config", str(conf), "--field", "Q2")
    assert json.loads(res.stdout)["field"] == "Q2"
    # env threads accepted
    res = run("suite", "--profile", "quick", "--tasks", "averaging:*",
              env_extra={"SP4LAB_THREADS": "2"})
    assert res.returncode == 0


def test_text_format_renders_lines():
    res = run("verify", "SPHER01", "--field", "Q3", "--i", "3", "--j", "1",
              "--format", "text")
    assert res.returncode == 0
    assert res.stdout.startswith("[PASS")


def test_out_file(tmp_path):
    out = tmp_path / "rep.jsonl"
    res = run("verify", "SPHER01", "--field", "Q3", "--i", "3", "--j", "1",
              "--out", str(out))
    assert res.returncode == 0
    assert jsonl(out.read_text())[0]["status"] == "pass"


def test_suite_subset_deterministic_and_thread_invariant():
    pattern = "fft*"
    base = run("suite", "--profile", "quick", "--seed", "5", "--tasks", pattern)
    again = run("suite", "--profile", "quick", "--seed", "5", "--tasks", pattern)
    threaded = run("suite", "--profile", "quick", "--seed", "5",
                   "--tasks", pattern, "--threads", "2")

    def strip(text):
        rows = []
        for d in jsonl(text):
            d.pop("elapsed_ms", None)
            rows.append(json.dumps(d, sort_keys=True))
        return rows

    assert strip(base.stdout) == strip(again.stdout) == strip(threaded.stdout)
    assert base.returncode == 0
