"""Command-line driver: JSON configs in, CSV tables out.

Exit codes: 0 success, 1 validation error, 2 oracle/acceptance failure,
3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .checks import ORACLE_TOL, oracle_check
from .coherence import BasisChoice, pure_pair_l1
from .errors import ValidationError
from .hamiltonian import DimerForm, NetworkParams, build_hamiltonian, exciton_decomposition
from .metrics import fidelity_series, running_average, tlc_from_amplitudes
from .oracles import dimer_amplitudes, dimer_tac_asymptote_l1, dimer_tac_asymptote_reoc
from .propagation import TimeGrid, trajectory
from .sweep import OBJECTIVES, PAIRS, PARAM_NAMES, ParamRange, SweepSpec, objective_values, grid_points, run_sweep
from .tables import reproduce_table

EXIT_OK, EXIT_INVALID, EXIT_FAILED, EXIT_IO = 0, 1, 2, 3
COMMANDS = ("evolve", "sweep", "asymptote", "oracle-check", "reproduce")

_KEYS = {
    "evolve": {"command", "n_sites", "site_energies", "couplings", "E", "J", "t_max", "dt",
               "start_site", "target_site", "rule", "seed"},
    "sweep": {"command", "system", "objective", "ranges", "t_max", "dt", "tie_tol", "workers",
              "rule", "dump_points", "seed"},
    "asymptote": {"command", "theta", "omega", "periods", "dt"},
    "oracle-check": {"command", "seed", "draws", "t_max", "dt"},
    "reproduce": {"command", "table", "workers"},
}


@dataclass
class RunConfig:
    command: str
    params: Optional[NetworkParams] = None
    sweep: Optional[SweepSpec] = None
    grid: Optional[TimeGrid] = None
    start_site: int = 0
    target_site: Optional[int] = None
    rule: str = "trapezoid"
    tie_tol: float = 1e-9
    workers: int = 1
    dump_points: bool = False
    theta: Optional[float] = None
    omega: Optional[float] = None
    periods: Optional[int] = None
    table: Optional[int] = None
    seed: int = 0
    draws: int = 100
    extra: dict = field(default_factory=dict)


def _num(cfg, key, default=None, kind=float, positive=False):
    if key not in cfg:
        if default is None:
            raise ValidationError(f"missing required key {key!r}")
        return default
    value = cfg[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"key {key!r} must be a number")
    if kind is int and int(value) != value:
        raise ValidationError(f"key {key!r} must be an integer")
    value = kind(value)
    if not math.isfinite(value):
        raise ValidationError(f"key {key!r} must be finite")
    if positive and value <= 0:
        raise ValidationError(f"key {key!r} must be > 0")
    return value


def _network(cfg) -> NetworkParams:
    n = _num(cfg, "n_sites", kind=int)
    if n < 2:
        raise ValidationError("key 'n_sites' must be >= 2")
    if "site_energies" in cfg or "couplings" in cfg:
        for key in ("site_energies", "couplings"):
            if key not in cfg:
                raise ValidationError(f"missing required key {key!r}")
        try:
            return NetworkParams(np.array(cfg["site_energies"], dtype=float), np.array(cfg["couplings"], dtype=float))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(f"key 'site_energies'/'couplings' malformed: {exc}") from None
    if n != 2:
        raise ValidationError("keys 'E'/'J' only describe a dimer; give 'site_energies' and 'couplings'")
    return NetworkParams.dimer(_num(cfg, "E"), _num(cfg, "J"))


def _ranges(cfg, system, defaults):
    given = cfg.get("ranges", {})
    if not isinstance(given, dict):
        raise ValidationError("key 'ranges' must be an object")
    names = PARAM_NAMES[system]
    unknown = set(given) - set(names)
    if unknown:
        raise ValidationError(f"unknown range key(s) {sorted(unknown)}; expected {list(names)}")
    out = []
    for name, default in zip(names, defaults):
        if name not in given:
            out.append(default)
            continue
        r = given[name]
        if not (isinstance(r, list) and len(r) == 3):
            raise ValidationError(f"ranges.{name} must be [min, max, step]")
        lo, hi, step = (_num({"x": v}, "x") for v in r)
        if step <= 0:
            raise ValidationError(f"ranges.{name}.step must be > 0")
        try:
            out.append(ParamRange(lo, hi, step))
        except ValidationError as exc:
            raise ValidationError(f"ranges.{name}: {exc}") from None
    return tuple(out)


def parse_config(text: str, command: Optional[str] = None) -> RunConfig:
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise ValidationError("config must be a JSON object")
    command = command or cfg.get("command")
    if command not in COMMANDS:
        raise ValidationError(f"key 'command' must be one of {COMMANDS}")
    if "command" in cfg and cfg["command"] != command:
        raise ValidationError(f"key 'command' is {cfg['command']!r} but {command!r} was requested")
    unknown = set(cfg) - _KEYS[command]
    if unknown:
        raise ValidationError(f"unknown key(s) {sorted(unknown)} for {command}")

    rc = RunConfig(command=command, seed=_num(cfg, "seed", 0, int))
    rule = cfg.get("rule", "trapezoid")
    if rule not in ("trapezoid", "right"):
        raise ValidationError("key 'rule' must be 'trapezoid' or 'right'")
    rc.rule = rule

    if command == "evolve":
        rc.params = _network(cfg)
        rc.grid = TimeGrid(_num(cfg, "t_max", positive=True), _num(cfg, "dt", positive=True))
        n = rc.params.n_sites
        rc.start_site = _num(cfg, "start_site", 1, int) - 1
        rc.target_site = _num(cfg, "target_site", n, int) - 1
        if not (0 <= rc.start_site < n and 0 <= rc.target_site < n):
            raise ValidationError("keys 'start_site'/'target_site' must be in 1..n_sites")
    elif command == "sweep":
        system = cfg.get("system")
        if system not in PARAM_NAMES:
            raise ValidationError("key 'system' must be 'dimer' or 'trimer'")
        objective = cfg.get("objective", "tac_l1_site")
        if objective not in OBJECTIVES:
            raise ValidationError(f"key 'objective' must be one of {OBJECTIVES}")
        base = SweepSpec.dimer() if system == "dimer" else SweepSpec.trimer()
        grid = TimeGrid(_num(cfg, "t_max", base.grid.t_max, positive=True), _num(cfg, "dt", base.grid.dt, positive=True))
        rc.sweep = SweepSpec(system, _ranges(cfg, system, base.ranges), grid, objective, rule)
        rc.tie_tol = _num(cfg, "tie_tol", 1e-9)
        rc.workers = _num(cfg, "workers", 1, int, positive=True)
        dump = cfg.get("dump_points", False)
        if not isinstance(dump, bool):
            raise ValidationError("key 'dump_points' must be true or false")
        rc.dump_points = dump
    elif command == "asymptote":
        rc.theta = _num(cfg, "theta")
        rc.omega = _num(cfg, "omega", positive=True)
        rc.periods = _num(cfg, "periods", kind=int, positive=True)
        rc.grid = TimeGrid(1.0, _num(cfg, "dt", 0.001, positive=True))
    elif command == "oracle-check":
        rc.draws = _num(cfg, "draws", 100, int, positive=True)
        rc.grid = TimeGrid(_num(cfg, "t_max", 10.0, positive=True), _num(cfg, "dt", 0.001, positive=True))
    elif command == "reproduce":
        table = _num(cfg, "table", kind=int)
        if table not in (1, 2, 3, 4):
            raise ValidationError("key 'table' must be 1, 2, 3 or 4")
        rc.table = table
        rc.workers = _num(cfg, "workers", 1, int, positive=True)
        if table == 1:
            rc.sweep = SweepSpec.dimer()
        elif table in (2, 3):
            rc.sweep = SweepSpec.trimer()
    return rc


def fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    return "%.12g" % (value + 0.0)


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            if len(row) != len(header):
                raise ValueError("non-rectangular CSV row")
            w.writerow([fmt(x) for x in row])


def evolve_table(rc: RunConfig):
    params = rc.params
    decomp = exciton_decomposition(build_hamiltonian(params))
    traj = trajectory(decomp, rc.start_site, rc.grid)
    n = params.n_sites
    report = fidelity_series(traj, rc.target_site)
    site, exc = BasisChoice.site(), BasisChoice.exciton(decomp)
    cols = {"t": traj.times}
    for i in range(n):
        cols[f"f_{i + 1}"] = traj.f[:, i]
    cols["F"] = report.f_series
    for m in ("l1", "reoc"):
        cols[f"C_{m}_site"] = tlc_from_amplitudes(traj.amplitudes, m, site)
    for m in ("l1", "reoc"):
        cols[f"TAC_{m}_site"] = running_average(cols[f"C_{m}_site"], rc.rule)
    for m in ("l1", "reoc"):
        cols[f"C_{m}_exciton"] = tlc_from_amplitudes(traj.amplitudes, m, exc)
    if n == 3:
        for i, j in PAIRS:
            cols[f"C{i + 1}{j + 1}"] = pure_pair_l1(traj.amplitudes, i, j)
    header = list(cols)
    return header, np.column_stack([cols[h] for h in header])


def sweep_header(spec: SweepSpec):
    header = list(spec.names) + ["f_max", "t_fmax"]
    for o in OBJECTIVES[1:]:
        header += [o, "t_" + o]
    if spec.n_sites == 3:
        for i, j in PAIRS:
            header += [f"tac_l1_{i + 1}{j + 1}", f"t_tac_l1_{i + 1}{j + 1}"]
    return header


def sweep_row(rec):
    row = list(rec.params) + [rec.f_max, rec.t_fmax]
    for o in OBJECTIVES[1:]:
        row += list(rec.tac[o])
    if rec.local_tac:
        for pair in rec.local_tac:
            row += list(pair)
    return row


def asymptote_table(theta: float, omega: float, periods: int, dt: float = 0.001):
    """Running site-basis TACs of a dimer sampled at whole revival periods.

    The step is adjusted down so that one period ``pi / omega`` is an integer
    number of samples.
    """
    period = math.pi / omega
    per = max(1, int(math.ceil(period / dt)))
    step = period / per
    form = DimerForm(omega=omega, theta=theta, E=omega * math.cos(theta), J12=omega * math.sin(theta))
    t = np.arange(per * periods + 1) * step
    amps = dimer_amplitudes(form, t)
    site = BasisChoice.site()
    tac_l1 = running_average(tlc_from_amplitudes(amps, "l1", site))
    tac_re = running_average(tlc_from_amplitudes(amps, "reoc", site))
    lim_l1 = dimer_tac_asymptote_l1(form)
    lim_re = dimer_tac_asymptote_reoc(form)
    rows = []
    for n in range(1, periods + 1):
        k = n * per
        rows.append([n, t[k], tac_l1[k], tac_re[k], lim_l1, lim_re])
    return ["period", "t", "TAC_l1_site", "TAC_reoc_site", "asymptote_l1", "asymptote_reoc"], rows


def run(rc: RunConfig, out_dir: Optional[Path] = None, stream=None) -> int:
    stream = stream or sys.stdout
    out = Path(out_dir) if out_dir is not None else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)

    if rc.command == "evolve":
        header, rows = evolve_table(rc)
        write_csv(out / "trajectory.csv", header, rows)
        return EXIT_OK

    if rc.command == "sweep":
        res = run_sweep(rc.sweep, rc.tie_tol, rc.workers)
        write_csv(out / "optima.csv", sweep_header(rc.sweep), [sweep_row(r) for r in res.optima])
        if rc.dump_points:
            pts = grid_points(rc.sweep)
            vals = objective_values(rc.sweep, pts)
            write_csv(out / "points.csv", list(rc.sweep.names) + [rc.sweep.objective],
                      np.column_stack([pts, vals]))
        print(f"best {rc.sweep.objective} = {fmt(res.best_value)} over {res.total_points} points, "
              f"{len(res.optima)} tied optima", file=stream)
        return EXIT_OK

    if rc.command == "asymptote":
        header, rows = asymptote_table(rc.theta, rc.omega, rc.periods, rc.grid.dt)
        write_csv(out / "asymptote.csv", header, rows)
        return EXIT_OK

    if rc.command == "oracle-check":
        devs = oracle_check(rc.seed, rc.draws, rc.grid)
        ok = True
        for name, value in devs.items():
            tol = 1e-10 if name.startswith("dark") else ORACLE_TOL
            passed = value <= tol
            ok &= passed
            print(f"{'PASS' if passed else 'FAIL'} {name} = {value:.3e} (tol {tol:g})", file=stream)
        return EXIT_OK if ok else EXIT_FAILED

    if rc.command == "reproduce":
        rows = reproduce_table(rc.table, rc.workers)
        write_csv(out / f"table_{rc.table}.csv", ["quantity", "published", "computed", "abs_diff", "tol", "passed"],
                  [[r.quantity, r.published, r.computed, r.abs_diff, r.tol, r.passed] for r in rows])
        for r in rows:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.quantity}: published {r.published:g} computed {r.computed:.6g}", file=stream)
        return EXIT_OK if all(r.passed for r in rows) else EXIT_FAILED

    raise ValidationError(f"unknown command {rc.command!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cohtransfer", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("evolve", "sweep"):
        s = sub.add_parser(name)
        s.add_argument("--config", required=True, type=Path)
        s.add_argument("--out", required=True, type=Path)
    s = sub.add_parser("asymptote")
    s.add_argument("--theta", required=True, type=float)
    s.add_argument("--omega", required=True, type=float)
    s.add_argument("--periods", required=True, type=int)
    s.add_argument("--dt", type=float, default=0.001)
    s.add_argument("--out", required=True, type=Path)
    s = sub.add_parser("oracle-check")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--draws", type=int, default=100)
    s = sub.add_parser("reproduce")
    s.add_argument("--table", required=True, type=int)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", required=True, type=Path)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in ("evolve", "sweep"):
            text = args.config.read_text(encoding="utf-8")
            rc = parse_config(text, args.command)
            out = args.out
        elif args.command == "asymptote":
            rc = parse_config(json.dumps({"theta": args.theta, "omega": args.omega,
                                          "periods": args.periods, "dt": args.dt}), "asymptote")
            out = args.out
        elif args.command == "oracle-check":
            rc = parse_config(json.dumps({"seed": args.seed, "draws": args.draws}), "oracle-check")
            out = None
        else:
            rc = parse_config(json.dumps({"table": args.table, "workers": args.workers}), "reproduce")
            out = args.out
        return run(rc, out)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
