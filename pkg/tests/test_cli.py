import json
import subprocess
import sys

import pytest

from supersinglet.cli import main, read_config_file


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_protocol_table_one(capsys):
    code, out, _ = run(capsys, "protocol", "--times", "23,1,45", "--g", "1", "--delta", "0", "--project", "ideal")
    assert code == 0
    assert out.splitlines()[0] == "F=0.976124 P=0.629"


def test_protocol_table_three(capsys):
    code, out, _ = run(capsys, "protocol", "--times", "15,38,95", "--mhz-angular", "17.5", "--project", "ideal")
    assert code == 0
    assert out.splitlines()[0] == "F=0.963001 P=0.320"


def test_protocol_zero_times(capsys):
    code, out, _ = run(capsys, "protocol", "--times", "0,0,0")
    assert out.splitlines()[0] == "F=0.166667 P=1.000"
    assert "efg,1,0" in out


def test_protocol_json_round_trips(capsys):
    code, out, _ = run(capsys, "protocol", "--times", "23,1,45", "--format", "json", "--project", "auxiliary")
    data = json.loads(out)
    assert code == 0
    assert data["vacuum_confidence"] > 0.982
    assert {a["levels"] for a in data["amplitudes"]} == {"efg", "egf", "fff", "feg", "fge", "gfe", "gef"}
    # floats serialize with full precision
    assert repr(data["fidelity"]) in out


def test_invalid_input_exit_status(capsys):
    assert main(["protocol", "--times", "1,1,1", "--g", "0"]) == 1
    assert "error" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        main(["protocol", "--times", "1,-1,1"])
    assert exc.value.code != 0


def test_reproduce_is_stable(capsys):
    _, first, _ = run(capsys, "reproduce", "--table", "3")
    _, second, _ = run(capsys, "reproduce", "--table", "3", "--workers", "2")
    assert first == second
    assert len(first.splitlines()) == 27
    assert "15,38,95,17.5,0,0.963001158,0.319802036" in first


def test_scan_and_sweep(capsys):
    code, out, _ = run(capsys, "scan", "--t1", "23", "--t2", "1", "--t3", "44:46:1")
    assert code == 0 and len(out.splitlines()) == 4
    code, out, _ = run(capsys, "sweep-detuning", "--times", "23,1,45", "--delta-range", "0:1:0.25")
    assert code == 0 and len(out.splitlines()) == 6
    assert run(capsys, "scan", "--t1", "23", "--t2", "1", "--t3", "45", "--delta", "0", "--delta-range", "0:1:0.5")[0] == 1


def test_surface_and_refine(capsys):
    code, out, _ = run(capsys, "surface", "--t1", "23", "--t2", "0:2:1", "--t3", "44:46:1")
    assert out.splitlines()[2].startswith("1,") and "0.976124194" in out
    code, out, _ = run(capsys, "refine", "--times", "23,1,45", "--format", "json")
    assert json.loads(out)["fidelity"] >= 0.976124


def test_detect(capsys):
    code, out, _ = run(capsys, "detect", "--photons", "1", "--t-prime", "4.71", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["residual"] < 1e-5
    code, out, _ = run(capsys, "detect", "--times", "23,1,45", "--num-aux", "2", "--format", "json")
    data = json.loads(out)
    assert data["t_prime_us"] == pytest.approx(4.712389, abs=1e-5)
    assert data["vacuum_confidence"] > 0.9997


def test_oracle_check(capsys):
    code, out, _ = run(capsys, "oracle-check", "--n-max", "1", "--times-list", "0.5,5")
    assert code == 0
    assert out.startswith("n,g1,g2,delta,t_us,max_abs_error")
    code, out, _ = run(capsys, "oracle-check", "--random", "3", "--times-list", "0.5", "--seed", "4", "--format", "json")
    assert json.loads(out)["max_abs_error"] < 1e-6
    # a coarse step must be caught
    assert run(capsys, "oracle-check", "--n-max", "0", "--times-list", "5", "--safety", "0.9")[0] == 1


def test_config_file_and_output_dir(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# defaults for table III\ng = 17.5\ndelta = 0\nformat = json\n")
    assert read_config_file(str(cfg))["g1"] == 17.5
    monkeypatch.setenv("SUPERSINGLET_OUTPUT_DIR", str(tmp_path))
    code = main(["protocol", "--config", str(cfg), "--times", "15,38,95", "--output", "out.json"])
    assert code == 0
    data = json.loads((tmp_path / "out.json").read_text())
    assert data["fidelity"] == pytest.approx(0.963001, abs=5e-7)
    # flags override the file
    code = main(["protocol", "--config", str(cfg), "--g", "1", "--times", "23,1,45", "--output", "o2.json"])
    assert json.loads((tmp_path / "o2.json").read_text())["g1_rad_per_us"] == 1.0


def test_bad_config_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    assert main(["protocol", "--config", str(cfg), "--times", "1,1,1"]) == 1


def test_module_entry_point():
    done = subprocess.run(
        [sys.executable, "-m", "supersinglet", "protocol", "--times", "12,1,45"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert done.stdout.startswith("F=0.975297 P=0.670")
