import json
import subprocess
import sys

import pytest

from cheblab import __version__
from cheblab.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_scenario_list(capsys):
    code, out, _ = run(["scenario", "list"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["cheblab"]["version"] == __version__
    assert "wall_time_s" in data["cheblab"]
    assert any(e["scenario"] == "cubic:2" for e in data["examples"])


@pytest.mark.parametrize("check", ["eq4", "foote-murty", "euler-columns", "orthogonality"])
def test_verify_subcommands(check, capsys):
    extra = ["--trials", "5"] if check in ("eq4", "foote-murty") else []
    code, out, _ = run(["verify", check, "--group", "S3", "--no-timing", *extra], capsys)
    assert code == 0
    assert json.loads(out)["failures"] == 0


def test_stats_csv(tmp_path, capsys):
    path = tmp_path / "s.csv"
    code, _, _ = run(["stats", "--scenario", "cyclo:4", "--xmax", "10000", "--threads", "2",
                      "--out", str(path)], capsys)
    assert code == 0
    lines = path.read_text().splitlines()
    comments = [l for l in lines if l.startswith("#")]
    assert comments[0] == f"# cheblab {__version__}"
    assert any(l.startswith("# config ") for l in comments)
    assert any(l.startswith("# wall_time_s ") for l in comments)
    body = [l for l in lines if not l.startswith("#")]
    assert body[0] == "x,class_name,psi_C,delta,rel_err"
    assert all(len(l.split(",")) == 5 for l in body)


def test_stats_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path, threads in ((a, "1"), (b, "1")):
        assert main(["stats", "--scenario", "cubic:2", "--xmax", "50000", "--threads", threads,
                     "--no-timing", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_byte_identical(tmp_path):
    outs = []
    for name in ("a", "b"):
        path = tmp_path / f"{name}.json"
        assert main(["verify", "eq4", "--group", "Q8", "--trials", "20", "--seed", "7",
                     "--no-timing", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_stats_json(capsys):
    code, out, _ = run(["stats", "--scenario", "quad:-4", "--xmax", "10000", "--json"], capsys)
    assert code == 0
    assert json.loads(out)["classes"][0]["density"] == "1/2"


def test_mellin_and_fail_exit(capsys):
    code, out, _ = run(["mellin", "--scenario", "cyclo:3", "--xmax", "10000"], capsys)
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(["mellin", "--scenario", "cyclo:3", "--xmax", "10000", "--tol", "0"], capsys)
    data = json.loads(out)
    assert code == (0 if data["rel_diff"] == 0 else 1)


def test_resum(capsys):
    code, out, _ = run(["resum", "--scenario", "cubic:2", "--xmax", "10000"], capsys)
    assert code == 0 and json.loads(out)["ok"]


def test_lfun_eval(capsys):
    code, out, _ = run(["lfun", "eval", "--q", "4", "--chi", "1", "--s", "2"], capsys)
    assert code == 0
    assert abs(json.loads(out)["value"]["re"] - 0.915965594177219) < 1e-14


def test_lfun_find_zero(capsys):
    code, out, _ = run(["lfun", "find-zero", "--q", "4", "--chi", "1", "--window", "5:7"], capsys)
    data = json.loads(out)
    assert code == 0 and data["found"]
    assert abs(data["s0"]["im"] - 6.0209489046976) < 1e-9


def test_lfun_residue(capsys):
    code, out, _ = run(["lfun", "residue", "--scenario", "cyclo:4", "--window", "5:7"], capsys)
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert [round(c["prediction"]["re"], 12) for c in data["classes"]] == [-0.5, 0.5]


def test_lfun_residue_collision_exit(capsys):
    code, _, _ = run(["lfun", "residue", "--scenario", "cyclo:4", "--s0", "0.5+6.09i"], capsys)
    assert code == 1


def test_lfun_tail_check(capsys):
    code, out, _ = run(["lfun", "tail-check", "--scenario", "biquad:-1,2", "--xmax", "10000"], capsys)
    assert code == 0 and json.loads(out)["max_error"] < 1e-12


@pytest.mark.parametrize("argv", [
    ["stats", "--scenario", "cyclo:2"],
    ["stats", "--scenario", "cyclo:4", "--xmax", "10"],
    ["mellin", "--scenario", "cyclo:3", "--class", "nope"],
    ["mellin", "--scenario", "cyclo:3", "--s", "0.5"],
    ["lfun", "eval", "--q", "4", "--chi", "0", "--s", "2"],
    ["lfun", "eval", "--q", "4", "--chi", "1", "--s", "zz"],
    ["lfun", "residue", "--scenario", "cubic:2"],
    ["verify", "eq4", "--group", "Z9"],
    ["stats", "--scenario", "cyclo:4", "--threads", "0"],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert err.startswith("cheblab: error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "bogus"])
    assert info.value.code == 2


def test_env_thread_fallback(monkeypatch, capsys):
    monkeypatch.setenv("CHEBLAB_THREADS", "2")
    code, out, _ = run(["stats", "--scenario", "cyclo:4", "--xmax", "5000", "--json"], capsys)
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cheblab", "scenario", "list", "--no-timing"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "wall_time_s" not in proc.stdout
