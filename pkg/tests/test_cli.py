import json
import subprocess
import sys

import pytest

from fracschro.cli import DEFAULTS, SCHEMA, RunConfig, main, resolve


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def csv_body(text):
    lines = text.splitlines()
    assert lines[0] == f"# schema={SCHEMA}"
    header = lines[1].split(",")
    rows = [[float(v) for v in line.split(",")] for line in lines[2:]]
    return header, rows


GREENS = ["greens", "--alpha", "1.5", "--beta", "0.9", "--theta", "0.3", "--t", "1",
          "--x-min", "-8", "--x-max", "8", "--nx", "321", "--method", "both"]


def test_greens_example(capsys):
    code, out, _ = run_cli(GREENS, capsys)
    assert code == 0
    header, rows = csv_body(out)
    assert header == ["x", "re_foxh", "im_foxh", "re_oracle", "im_oracle", "rel_diff"]
    assert len(rows) == 321
    assert max(r[-1] for r in rows) < 1e-3


def test_linear_time_example(capsys):
    code, out, _ = run_cli(["linear-time", "--beta", "0.5", "--energy", "-1", "--t-min", "0.1",
                            "--t-max", "5", "--nt", "50", "--method", "both"], capsys)
    assert code == 0
    header, rows = csv_body(out)
    assert header == ["t", "re_h", "im_h", "re_ml", "im_ml", "rel_diff"]
    assert len(rows) == 50


def test_validate(capsys):
    code, out, err = run_cli(["validate"], capsys)
    assert code == 0
    assert err.count("PASS") == len(csv_body(out)[1])
    assert "FAIL" not in err


def test_deterministic_output(tmp_path, capsys):
    args = ["linear-space", "--alpha", "1.8", "--theta", "-0.1", "--nx", "15", "--x-min", "-2",
            "--x-max", "4", "--method", "both"]
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main(args + ["--output", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert b"\r" not in paths[0].read_bytes()


def test_dump_config_round_trip(tmp_path, capsys):
    args = ["greens", "--alpha", "1.8", "--beta", "0.7", "--theta", "-0.2", "--nx", "9", "--hbar", "0.9"]
    code, dumped, _ = run_cli(args + ["--dump-config"], capsys)
    assert code == 0
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(dumped)
    direct = tmp_path / "direct.csv"
    replay = tmp_path / "replay.csv"
    assert main(args + ["--output", str(direct)]) == 0
    assert main(["--config", str(cfg_path), "--output", str(replay)]) == 0
    assert direct.read_bytes() == replay.read_bytes()
    assert json.loads(dumped)["hbar"] == 0.9


def test_flags_override_config(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"command": "ml", "beta": 0.5, "nx": 3}))
    cfg, _ = resolve(["--config", str(cfg_path), "--beta", "0.7"])
    assert cfg.get("beta") == 0.7
    assert cfg.get("nx") == 3


def test_json_output(capsys):
    code, out, _ = run_cli(["ml", "--beta", "0.6", "--x-min", "-3", "--x-max", "2", "--nx", "6",
                            "--method", "both", "--format", "json"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["meta"]["schema"] == SCHEMA
    assert doc["meta"]["config"]["beta"] == 0.6
    assert doc["meta"]["columns"] == ["x", "re_ml", "im_ml", "re_series", "im_series", "rel_diff"]
    assert len(doc["rows"]) == 6
    assert doc["meta"]["max_rel_diff"] < 1e-10


def test_seventeen_digits(capsys):
    _, out, _ = run_cli(["wright", "--beta", "0.5", "--x-min", "0", "--x-max", "1", "--nx", "2"], capsys)
    _, rows = csv_body(out)
    assert rows[0][1] == 1 / 3.141592653589793 ** 0.5


def test_foxh_presets(capsys):
    for preset in ("green", "mellin", "linear", "fbeta"):
        args = ["foxh", "--preset", preset, "--alpha", "1.5", "--theta", "0.3", "--beta", "0.5",
                "--x-min", "0.5", "--x-max", "2", "--nx", "4", "--method", "both", "--tolerance", "1e-8"]
        if preset == "green":
            args += ["--phase", "-0.8"]
        code, _, err = run_cli(args, capsys)
        assert code == 0, (preset, err)


def test_custom_preset_needs_arrays(capsys):
    code, _, err = run_cli(["foxh", "--preset", "custom", "--m", "1"], capsys)
    assert code == 2 and "custom" in err


@pytest.mark.parametrize("args", [
    ["greens", "--alpha", "2.5"],
    ["greens", "--nx", "1"],
    ["greens", "--x-min", "3", "--x-max", "1"],
    ["linear-time", "--beta", "1.2"],
    ["propagate", "--width", "4", "--x-min", "-2", "--x-max", "2", "--nx", "5"],
])
def test_domain_errors_exit_two(args, capsys):
    code, out, err = run_cli(args, capsys)
    assert code == 2
    assert err.startswith("error:")
    assert out == ""


def test_bad_config_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"command": "greens", "gamma": 1}))
    code, _, err = run_cli(["--config", str(bad)], capsys)
    assert code == 2 and "gamma" in err


def test_convergence_failure_exit_three(capsys):
    code, _, err = run_cli(["greens", "--alpha", "1.1", "--beta", "1", "--t", "0.3125",
                            "--x-min", "0.5", "--x-max", "1", "--nx", "2"], capsys)
    assert code == 3
    assert "convergence" in err


def test_tolerance_breach_exit_four(capsys):
    code, out, err = run_cli(["greens", "--alpha", "1.5", "--beta", "0.9", "--theta", "0.3", "--nx", "3",
                              "--x-min", "0.5", "--x-max", "1.5", "--method", "both",
                              "--dampings", "0.2,0.1,0.05", "--tolerance", "1e-6"], capsys)
    assert code == 4
    assert "breach" in err
    assert csv_body(out)[0][-1] == "rel_diff"


def test_help_states_defaults():
    out = subprocess.run([sys.executable, "-m", "fracschro", "--help"], capture_output=True, text=True)
    assert out.returncode == 0
    text = " ".join(out.stdout.split())
    assert "hbar = C_alpha = 1" in text and "f(0) = 1" in text


def test_run_config_defaults():
    cfg = RunConfig.from_dict({"command": "greens"})
    assert cfg.method == "foxh" and cfg.fmt == "csv"
    assert cfg.get("tolerance") == DEFAULTS["tolerance"] == 1e-3
