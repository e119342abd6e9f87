import subprocess
import sys

import pytest

from rcfd.cli import main
from rcfd.errors import ConfigInvalid
from rcfd.sim.config import config_from_mapping, parse_config_text


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_run_subcommand(capsys, tmp_path):
    out_csv = tmp_path / "r.csv"
    code, out, _ = run_cli(
        ["run", "--protocol", "rcfd", "--nodes", "4", "--duration", "0.5",
         "--seed", "3", "--out", str(out_csv)],
        capsys,
    )
    assert code == 0
    assert "rcfd N=4" in out
    assert out_csv.exists() and out_csv.with_suffix(".jsonl").exists()
    text = out_csv.read_text()
    assert text.startswith("protocol,N,metric,mean,stddev,runs\n")


def test_run_determinism_byte_identical(capsys, tmp_path):
    args = ["run", "--protocol", "dcf", "--nodes", "5", "--duration", "0.5", "--seed", "9"]
    blobs = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        code, _, _ = run_cli(args + ["--out", str(path)], capsys)
        assert code == 0
        blobs.append(path.read_bytes() + path.with_suffix(".jsonl").read_bytes())
    assert blobs[0] == blobs[1]


def test_sweep_subcommand(capsys, tmp_path):
    out_csv = tmp_path / "sweep.csv"
    code, out, _ = run_cli(
        ["sweep", "--protocol", "rcfd,back2f", "--nodes", "2,5", "--runs", "2",
         "--duration", "0.3", "--seed", "1", "--out", str(out_csv)],
        capsys,
    )
    assert code == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "protocol,N,metric,mean,stddev,runs"
    # 2 protocols x 2 sizes x 7 metrics
    assert len(lines) == 1 + 2 * 2 * 7
    assert all(ln.endswith(",2") for ln in lines[1:])


def test_sweep_determinism(capsys, tmp_path):
    blobs = []
    for name in ("s1.csv", "s2.csv"):
        path = tmp_path / name
        code, _, _ = run_cli(
            ["sweep", "--protocol", "rcfd", "--nodes", "3", "--runs", "2",
             "--duration", "0.3", "--seed", "5", "--out", str(path)],
            capsys,
        )
        assert code == 0
        blobs.append(path.read_bytes())
    assert blobs[0] == blobs[1]


def test_scenario_subcommand(capsys):
    code, out, _ = run_cli(["scenario", "1"], capsys)
    assert code == 0
    assert "decision n1: primary -> n2" in out
    assert "decision n3: silent" in out
    code, out, _ = run_cli(["scenario", "2"], capsys)
    assert "secondary -> n1" in out


def test_validate_subcommand(capsys):
    code, out, _ = run_cli(["validate", "--max-nodes", "3", "--subcarriers", "6"], capsys)
    assert code == 0
    assert out.startswith("OK")


def test_validate_guard(capsys):
    code, _, err = run_cli(["validate", "--max-nodes", "6"], capsys)
    assert code == 2
    assert "error:" in err


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "sim.cfg"
    cfg.write_text(
        "# demo config\n"
        "N = 4\n"
        "mac = back2f\n"
        "T = 0.4\n"
        "seed = 2\n"
        "L = 500\n"
        "t_scan = 28\n"
    )
    code, out, _ = run_cli(["run", "--config", str(cfg)], capsys)
    assert code == 0
    assert "back2f N=4" in out


def test_config_unknown_key_rejected():
    with pytest.raises(ConfigInvalid, match="unknown key"):
        parse_config_text("N = 4\nbogus = 1\n")
    with pytest.raises(ConfigInvalid):
        parse_config_text("N 4")
    with pytest.raises(ConfigInvalid, match="duplicate"):
        parse_config_text("N = 4\nN = 5\n")


def test_config_validation_errors():
    with pytest.raises(ConfigInvalid):
        config_from_mapping({"N": 0})
    with pytest.raises(ConfigInvalid):
        config_from_mapping({"N": 2, "mac": "aloha"})
    with pytest.raises(ConfigInvalid):
        config_from_mapping({"N": 40, "S": 64, "m": 1, "mac": "rcfd"})


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rcfd.cli", "scenario", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "secondary" in proc.stdout
