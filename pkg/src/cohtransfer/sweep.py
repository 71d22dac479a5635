"""Exhaustive grid search over dimer and trimer Hamiltonian parameters.

Dimer points are ``(E, J12)`` with site energies ``(E, -E)``. Trimer points are
``(E1 - E3, E2 - E3, J12, J23, J13)`` with ``E3 = 0``; a global energy shift
does not change any transfer or coherence quantity.

Objectives are evaluated in fixed-size chunks of points with stacked
eigendecompositions, so results do not depend on how chunks are scheduled.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .coherence import pure_l1, pure_pair_l1, pure_reoc
from .errors import ValidationError
from .hamiltonian import NetworkParams, sorted_eigh
from .metrics import first_argmax, running_average
from .propagation import TimeGrid, evolve_amplitudes

OBJECTIVES = ("f_max", "tac_l1_site", "tac_reoc_site", "tac_l1_exciton", "tac_reoc_exciton")
PARAM_NAMES = {
    "dimer": ("E", "J12"),
    "trimer": ("E1_E3", "E2_E3", "J12", "J23", "J13"),
}
PAIRS = ((0, 1), (1, 2), (0, 2))
TIE_TOL = 1e-9
# complex amplitudes held per chunk; bounds memory at a few hundred MB
CHUNK_ELEMENTS = 3_000_000


@dataclass(frozen=True)
class ParamRange:
    lo: float
    hi: float
    step: float

    def __post_init__(self):
        if not self.step > 0:
            raise ValidationError(f"step must be > 0, got {self.step}")
        if self.hi < self.lo:
            raise ValidationError("range max must not be below min")
        span = (self.hi - self.lo) / self.step
        if abs(span - round(span)) > 1e-9:
            raise ValidationError(f"step {self.step} does not divide [{self.lo}, {self.hi}]")

    @property
    def count(self) -> int:
        return int(round((self.hi - self.lo) / self.step)) + 1

    def values(self) -> np.ndarray:
        k = np.arange(self.count)
        return np.round(self.lo + k * self.step, 12) + 0.0


@dataclass(frozen=True)
class SweepSpec:
    system: str
    ranges: Tuple[ParamRange, ...]
    grid: TimeGrid
    objective: str = "tac_l1_site"
    rule: str = "trapezoid"

    def __post_init__(self):
        if self.system not in PARAM_NAMES:
            raise ValidationError(f"unknown system {self.system!r}")
        if self.objective not in OBJECTIVES:
            raise ValidationError(f"unknown objective {self.objective!r}")
        if self.rule not in ("trapezoid", "right"):
            raise ValidationError(f"unknown quadrature rule {self.rule!r}")
        if len(self.ranges) != len(PARAM_NAMES[self.system]):
            raise ValidationError(f"{self.system} needs ranges for {PARAM_NAMES[self.system]}")

    @property
    def names(self):
        return PARAM_NAMES[self.system]

    @property
    def n_sites(self) -> int:
        return 2 if self.system == "dimer" else 3

    @property
    def shape(self):
        return tuple(r.count for r in self.ranges)

    @property
    def total_points(self) -> int:
        return math.prod(self.shape)

    @classmethod
    def dimer(cls, objective="tac_l1_site", **kw) -> "SweepSpec":
        r = ParamRange(-0.5, 0.5, 0.01)
        return cls("dimer", (r, r), kw.pop("grid", TimeGrid(10.0, 0.001)), objective, **kw)

    @classmethod
    def trimer(cls, objective="tac_l1_site", **kw) -> "SweepSpec":
        e = ParamRange(-1.0, 1.0, 0.1)
        j = ParamRange(-0.5, 0.5, 0.1)
        return cls("trimer", (e, e, j, j, j), kw.pop("grid", TimeGrid(10.0, 0.01)), objective, **kw)


@dataclass(frozen=True)
class SweepRecord:
    params: Tuple[float, ...]
    f_max: float
    t_fmax: float
    tac: Dict[str, Tuple[float, float]]
    local_tac: Optional[Tuple[Tuple[float, float], ...]] = None

    def objective(self, name: str) -> float:
        return self.f_max if name == "f_max" else self.tac[name][0]


@dataclass(frozen=True)
class SweepResult:
    objective: str
    best_value: float
    optima: List[SweepRecord]
    total_points: int
    tie_tol: float = TIE_TOL


def network_params(system: str, point: Sequence[float]) -> NetworkParams:
    if system == "dimer":
        E, J = point
        return NetworkParams.dimer(E, J)
    d13, d23, J12, J23, J13 = point
    return NetworkParams.trimer(d13, d23, 0.0, J12, J23, J13)


def _hamiltonians(system: str, pts: np.ndarray) -> np.ndarray:
    n = pts.shape[0]
    if system == "dimer":
        h = np.zeros((n, 2, 2))
        h[:, 0, 0] = pts[:, 0]
        h[:, 1, 1] = -pts[:, 0]
        h[:, 0, 1] = h[:, 1, 0] = pts[:, 1]
        return h
    h = np.zeros((n, 3, 3))
    h[:, 0, 0] = pts[:, 0]
    h[:, 1, 1] = pts[:, 1]
    h[:, 0, 1] = h[:, 1, 0] = pts[:, 2]
    h[:, 1, 2] = h[:, 2, 1] = pts[:, 3]
    h[:, 0, 2] = h[:, 2, 0] = pts[:, 4]
    return h


def enumerate_grid(spec: SweepSpec) -> Iterator[Tuple[float, ...]]:
    """Grid points in lexicographic index order, last parameter fastest."""
    return itertools.product(*(r.values() for r in spec.ranges))


def grid_points(spec: SweepSpec, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
    """Rows ``start:stop`` of the enumerated grid as an ``(n, p)`` array."""
    stop = spec.total_points if stop is None else min(stop, spec.total_points)
    idx = np.unravel_index(np.arange(start, stop), spec.shape)
    cols = [r.values()[i] for r, i in zip(spec.ranges, idx)]
    return np.stack(cols, axis=-1)


def _evolve(spec: SweepSpec, pts: np.ndarray):
    w, v = sorted_eigh(_hamiltonians(spec.system, pts))
    start = np.zeros((pts.shape[0], spec.n_sites), dtype=complex)
    start[:, 0] = 1.0
    return v, evolve_amplitudes(w, v, start, spec.grid.times)


def _exciton_coeffs(v: np.ndarray) -> np.ndarray:
    # <e_k|1> for each point
    return np.conj(v[:, 0, :])


def objective_values(spec: SweepSpec, pts: np.ndarray, objective: Optional[str] = None) -> np.ndarray:
    """Objective for each row of ``pts``; windowed maxima are over the whole grid."""
    objective = objective or spec.objective
    if objective.endswith("_exciton"):
        _, v = sorted_eigh(_hamiltonians(spec.system, pts))
        c = _exciton_coeffs(v)
        return pure_l1(c) if objective == "tac_l1_exciton" else pure_reoc(c)
    _, amps = _evolve(spec, pts)
    if objective == "f_max":
        return np.abs(amps[..., -1]).max(axis=1)
    tlc = pure_l1(amps) if objective == "tac_l1_site" else pure_reoc(amps)
    return running_average(tlc, spec.rule).max(axis=1)


def evaluate_points(spec: SweepSpec, pts: np.ndarray) -> List[SweepRecord]:
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    times = spec.grid.times
    v, amps = _evolve(spec, pts)
    f = np.abs(amps)
    fmax, kf = first_argmax(f[..., -1], axis=1)
    tacs = {}
    for name, fn in (("tac_l1_site", pure_l1), ("tac_reoc_site", pure_reoc)):
        val, k = first_argmax(running_average(fn(amps), spec.rule), axis=1)
        tacs[name] = (val, times[k])
    c = _exciton_coeffs(v)
    tacs["tac_l1_exciton"] = (pure_l1(c), np.zeros(len(pts)))
    tacs["tac_reoc_exciton"] = (pure_reoc(c), np.zeros(len(pts)))
    local = None
    if spec.n_sites == 3:
        local = []
        for i, j in PAIRS:
            val, k = first_argmax(running_average(pure_pair_l1(amps, i, j), spec.rule), axis=1)
            local.append((val, times[k]))

    records = []
    for n, p in enumerate(pts):
        records.append(
            SweepRecord(
                params=tuple(float(x) for x in p),
                f_max=float(fmax[n]),
                t_fmax=float(times[kf[n]]),
                tac={key: (float(a[n]), float(b[n])) for key, (a, b) in tacs.items()},
                local_tac=None if local is None else tuple((float(a[n]), float(b[n])) for a, b in local),
            )
        )
    return records


def evaluate_point(params: Sequence[float], spec: SweepSpec) -> SweepRecord:
    return evaluate_points(spec, np.asarray(params, dtype=float)[None, :])[0]


def _chunk_size(spec: SweepSpec) -> int:
    per_point = spec.grid.count * spec.n_sites
    return max(1, CHUNK_ELEMENTS // per_point)


def _scan_chunk(args):
    spec, start, stop, tie_tol = args
    vals = objective_values(spec, grid_points(spec, start, stop))
    best = float(vals.max())
    keep = np.nonzero(vals >= best - tie_tol)[0]
    return best, [(start + int(i), float(vals[i])) for i in keep]


def _reduce(partials, tie_tol):
    best = -math.inf
    cands: List[Tuple[int, float]] = []
    for chunk_best, chunk_cands in partials:
        best = max(best, chunk_best)
        cands = [c for c in cands + chunk_cands if c[1] >= best - tie_tol]
    return best, sorted(cands)


def run_sweep(spec: SweepSpec, tie_tol: float = TIE_TOL, workers: int = 1, progress=None) -> SweepResult:
    """Scan every grid point and return all points within ``tie_tol`` of the best.

    ``workers > 1`` evaluates chunks in a process pool. Chunk boundaries do not
    depend on ``workers``, so the result is identical for any worker count.
    """
    total = spec.total_points
    size = _chunk_size(spec)
    jobs = [(spec, s, min(s + size, total), tie_tol) for s in range(0, total, size)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_scan_chunk, jobs))
    else:
        partials = []
        for n, job in enumerate(jobs):
            partials.append(_scan_chunk(job))
            if progress is not None:
                progress(n + 1, len(jobs))
    best, cands = _reduce(partials, tie_tol)
    idx = [i for i, _ in cands]
    records = evaluate_points(spec, np.concatenate([grid_points(spec, i, i + 1) for i in idx])) if idx else []
    records.sort(key=lambda r: r.params)
    return SweepResult(spec.objective, best, records, total, tie_tol)
