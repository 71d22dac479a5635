import csv
import json
import math

import numpy as np
import pytest

from cohtransfer.cli import (
    EXIT_FAILED,
    EXIT_INVALID,
    EXIT_IO,
    EXIT_OK,
    evolve_table,
    fmt,
    main,
    parse_config,
)
from cohtransfer.errors import ValidationError


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


def write_json(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return p


EVOLVE = {"n_sites": 2, "E": 0.36, "J": 0.5, "t_max": 10, "dt": 0.001}
TRIMER = {
    "n_sites": 3,
    "site_energies": [0.2, -0.8, 0.0],
    "couplings": [[0, -0.5, -0.5], [-0.5, 0, -0.1], [-0.5, -0.1, 0]],
    "t_max": 10,
    "dt": 0.01,
}


def test_parse_minimal_evolve():
    rc = parse_config(json.dumps(EVOLVE), "evolve")
    assert rc.params.n_sites == 2 and rc.grid.count == 10001
    assert rc.start_site == 0 and rc.target_site == 1


def test_parse_sweep_step_zero_names_step():
    cfg = {"system": "dimer", "ranges": {"E": [0, 0.5, 0]}}
    with pytest.raises(ValidationError, match="step"):
        parse_config(json.dumps(cfg), "sweep")


def test_parse_reproduce_table1_implies_dimer_grid():
    rc = parse_config('{"table": 1}', "reproduce")
    assert rc.sweep.system == "dimer" and rc.sweep.total_points == 10201


@pytest.mark.parametrize(
    "cfg, key",
    [
        ({**EVOLVE, "colour": 1}, "colour"),
        ({k: v for k, v in EVOLVE.items() if k != "dt"}, "dt"),
        ({**EVOLVE, "t_max": "ten"}, "t_max"),
        ({**EVOLVE, "start_site": 5}, "start_site"),
        ({**EVOLVE, "rule": "simpson"}, "rule"),
    ],
)
def test_parse_errors_name_key(cfg, key):
    with pytest.raises(ValidationError, match=key):
        parse_config(json.dumps(cfg), "evolve")


def test_parse_rejects_bad_json_and_command():
    with pytest.raises(ValidationError):
        parse_config("{not json", "evolve")
    with pytest.raises(ValidationError, match="command"):
        parse_config('{"command": "fly"}')
    with pytest.raises(ValidationError, match="command"):
        parse_config('{"command": "sweep"}', "evolve")


def test_fmt():
    assert fmt(-0.0) == "0"
    assert fmt(1 / 3) == "0.333333333333"
    assert fmt(True) == "1"


def test_evolve_csv_columns_and_fmax(tmp_path):
    cfg = write_json(tmp_path, "ev.json", EVOLVE)
    assert main(["evolve", "--config", str(cfg), "--out", str(tmp_path / "o")]) == EXIT_OK
    header, data = read_csv(tmp_path / "o" / "trajectory.csv")
    assert header == ["t", "f_1", "f_2", "F", "C_l1_site", "C_reoc_site", "TAC_l1_site",
                      "TAC_reoc_site", "C_l1_exciton", "C_reoc_exciton"]
    assert data.shape == (10001, 10)
    assert abs(data[:, 3].max() - 0.81) < 0.005


def test_evolve_trimer_has_pair_columns(tmp_path):
    cfg = write_json(tmp_path, "ev3.json", TRIMER)
    assert main(["evolve", "--config", str(cfg), "--out", str(tmp_path / "o")]) == EXIT_OK
    header, data = read_csv(tmp_path / "o" / "trajectory.csv")
    assert header[-3:] == ["C12", "C23", "C13"] and header[1:4] == ["f_1", "f_2", "f_3"]
    assert np.allclose(data[:, -3:].sum(axis=1), data[:, header.index("C_l1_site")], atol=1e-10)


def test_csv_round_trip_and_byte_stability(tmp_path):
    cfg = write_json(tmp_path, "ev3.json", TRIMER)
    main(["evolve", "--config", str(cfg), "--out", str(tmp_path / "a")])
    main(["evolve", "--config", str(cfg), "--out", str(tmp_path / "b")])
    a = (tmp_path / "a" / "trajectory.csv").read_bytes()
    assert a == (tmp_path / "b" / "trajectory.csv").read_bytes()
    assert b"\r" not in a
    _, data = read_csv(tmp_path / "a" / "trajectory.csv")
    _, mem = evolve_table(parse_config(json.dumps(TRIMER), "evolve"))
    # 12 significant digits: relative error at most half a unit in the 12th digit
    assert np.all(np.abs(data - mem) <= 5e-12 * np.maximum(np.abs(mem), 1e-300) + 1e-300)


def test_sweep_cli(tmp_path):
    cfg = write_json(tmp_path, "sw.json", {
        "system": "dimer", "objective": "tac_l1_site",
        "ranges": {"E": [0, 0.5, 0.1], "J12": [0, 0.5, 0.1]}, "t_max": 5, "dt": 0.01,
        "dump_points": True,
    })
    assert main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "s")]) == EXIT_OK
    header, data = read_csv(tmp_path / "s" / "optima.csv")
    assert header[:4] == ["E", "J12", "f_max", "t_fmax"]
    assert data.shape[0] >= 1
    h2, pts = read_csv(tmp_path / "s" / "points.csv")
    assert pts.shape == (36, 3)
    assert math.isclose(pts[:, 2].max(), data[0, header.index("tac_l1_site")], rel_tol=1e-11)


def test_asymptote_cli(tmp_path):
    assert main(["asymptote", "--theta", str(math.pi / 2), "--omega", "1", "--periods", "100",
                 "--out", str(tmp_path / "a")]) == EXIT_OK
    header, data = read_csv(tmp_path / "a" / "asymptote.csv")
    assert data.shape[0] == 100
    assert abs(data[-1, header.index("TAC_l1_site")] - 2 / math.pi) < 1e-3


def test_oracle_check_cli(capsys):
    assert main(["oracle-check", "--draws", "10"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.count("PASS") == 3 and "FAIL" not in out


def test_reproduce_table4(tmp_path):
    assert main(["reproduce", "--table", "4", "--out", str(tmp_path / "r")]) == EXIT_OK
    with open(tmp_path / "r" / "table_4.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["quantity", "published", "computed", "abs_diff", "tol", "passed"]
    assert len(rows) == 7 and all(r[-1] == "1" for r in rows[1:])


def test_exit_codes(tmp_path, capsys):
    bad = write_json(tmp_path, "bad.json", {"system": "dimer", "ranges": {"E": [0, 1, 0]}})
    assert main(["sweep", "--config", str(bad), "--out", str(tmp_path / "x")]) == EXIT_INVALID
    assert "step" in capsys.readouterr().err
    assert main(["evolve", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path)]) == EXIT_IO
    assert main(["reproduce", "--table", "7", "--out", str(tmp_path)]) == EXIT_INVALID
    assert EXIT_FAILED == 2
