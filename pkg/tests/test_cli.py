import json
import subprocess
import sys

import pytest

import icinfb.simulator.cli as cli
from icinfb import CapacityError
from icinfb.simulator import CSV_HEADER


def test_allocate_prints_the_bit_split(capsys):
    assert cli.main(["allocate"]) == 0
    out = capsys.readouterr().out
    assert "feedback budget:      35 bits" in out
    assert "serving station:" in out
    assert sum(line.startswith("interfering station") for line in out.splitlines()) == 6
    assert "rate loss bound:" in out


def test_allocate_writes_machine_readable_json(tmp_path, capsys):
    out_path = tmp_path / "alloc.json"
    assert cli.main(["allocate", "--distance", "200", "--out", str(out_path)]) == 0
    capsys.readouterr()
    payload = json.loads(out_path.read_text())
    assert payload["distance_m"] == 200.0
    assert payload["btot"] == 35
    assert payload["desired_bits"] + sum(payload["interferer_bits"]) == 35
    assert payload["allocation"] == \
        [payload["desired_bits"], *payload["interferer_bits"]]
    assert payload["loss_upper_bound_bits"] >= 0.0


def test_allocate_respects_config_file(tmp_path, capsys):
    config = tmp_path / "c.json"
    config.write_text(json.dumps({"btot": 7}))
    assert cli.main(["allocate", "--config", str(config)]) == 0
    out = capsys.readouterr().out
    assert "feedback budget:      7 bits" in out
    assert "serving station:      7 bits" in out  # edge split keeps every bit


@pytest.mark.parametrize("argv", [
    ["allocate", "--config", "/nonexistent/config.json"],
    ["allocate", "--distance", "0.2"],  # below the 1 m model floor
    ["allocate", "--distance", "1e9"],  # outside the cell
    ["allocate", "--trials", "0"],
    ["sweep-distance", "--trials", "-2"],
])
def test_invalid_inputs_exit_with_code_two(argv, capsys):
    assert cli.main(argv) == 2
    assert "error:" in capsys.readouterr().err


def test_malformed_and_unknown_config_keys_exit_with_code_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert cli.main(["allocate", "--config", str(bad)]) == 2
    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"antennas": 8}))
    assert cli.main(["allocate", "--config", str(unknown)]) == 2
    capsys.readouterr()


def test_numerical_failures_exit_with_code_three(monkeypatch, capsys):
    def explode(*args, **kwargs):
        raise CapacityError("synthetic capacity failure")

    monkeypatch.setattr(cli, "allocate", explode)
    assert cli.main(["allocate"]) == 3
    assert "synthetic capacity failure" in capsys.readouterr().err


def test_sweep_writes_csv_to_file(tmp_path, capsys):
    out_path = tmp_path / "sweep.csv"
    assert cli.main(["sweep-bits", "--trials", "2", "--out", str(out_path)]) == 0
    capsys.readouterr()
    lines = out_path.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 6  # header + one row per budget
    first = lines[1].split(",")
    assert float(first[0]) == 7.0
    assert len(first) == 7


def test_sweep_streams_csv_to_stdout(capsys):
    assert cli.main(["sweep-delay", "--trials", "1"]) == 0
    out = capsys.readouterr().out
    assert out.startswith(CSV_HEADER + "\n")
    assert len(out.splitlines()) == 7


def test_seed_override_reaches_the_engine(tmp_path, capsys):
    a, b, c = (tmp_path / name for name in ("a.csv", "b.csv", "c.csv"))
    assert cli.main(["sweep-bits", "--trials", "2", "--seed", "1", "--out", str(a)]) == 0
    assert cli.main(["sweep-bits", "--trials", "2", "--seed", "2", "--out", str(b)]) == 0
    assert cli.main(["sweep-bits", "--trials", "2", "--seed", "1", "--out", str(c)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == c.read_bytes()
    assert a.read_bytes() != b.read_bytes()


def test_module_entry_point_runs_as_a_subprocess():
    result = subprocess.run(
        [sys.executable, "-m", "icinfb.simulator.cli", "allocate", "--distance", "300"],
        capture_output=True, text=True, timeout=120)
    assert result.returncode == 0
    assert "user distance:        300 m" in result.stdout
