"""Fidelity, time-local and time-averaged coherence along a trajectory."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .coherence import BasisChoice, pure_l1, pure_pair_l1, pure_reoc
from .errors import ValidationError
from .hamiltonian import ExcitonDecomposition
from .propagation import TimeGrid, Trajectory

MEASURES = ("l1", "reoc")
PERFECT_TOL = 1e-9


@dataclass(frozen=True)
class TransferReport:
    f_series: np.ndarray
    f_max: float
    t_at_fmax: float
    perfect: bool


@dataclass(frozen=True)
class CoherenceSeries:
    grid: TimeGrid
    tlc: np.ndarray
    tac: np.ndarray
    measure: str
    basis: str


def running_average(values, rule: str = "trapezoid", axis: int = -1) -> np.ndarray:
    """Running time average ``(1/t_k) * integral_0^{t_k}`` on a uniform grid.

    ``rule`` is ``"trapezoid"`` (composite trapezoid) or ``"right"`` (right
    Riemann sum, first-order accurate). The grid spacing cancels, so only the
    sample sequence is needed. The value at ``t = 0`` is the sample itself,
    the continuous limit of the average.
    """
    c = np.moveaxis(np.asarray(values, dtype=float), axis, -1)
    n = c.shape[-1]
    if rule == "trapezoid":
        pieces = 0.5 * (c[..., 1:] + c[..., :-1])
    elif rule == "right":
        pieces = c[..., 1:]
    else:
        raise ValidationError(f"unknown quadrature rule {rule!r}")
    out = np.empty_like(c)
    out[..., 0] = c[..., 0]
    if n > 1:
        k = np.arange(1, n)
        out[..., 1:] = np.cumsum(pieces, axis=-1) / k
    return np.moveaxis(out, -1, axis)


def first_argmax(values, axis: int = -1):
    """Maximum and the earliest index where it is attained."""
    idx = np.argmax(values, axis=axis)
    return np.take_along_axis(values, np.expand_dims(idx, axis), axis).squeeze(axis), idx


def fidelity_series(traj: Trajectory, target_site: Optional[int] = None, tol: float = PERFECT_TOL) -> TransferReport:
    d = traj.amplitudes.shape[1]
    target = d - 1 if target_site is None else target_site
    if not 0 <= target < d:
        raise ValidationError(f"target site {target} out of range")
    f = traj.f[:, target]
    f_max, k = first_argmax(f)
    return TransferReport(
        f_series=f,
        f_max=float(f_max),
        t_at_fmax=float(traj.times[k]),
        perfect=bool(f_max >= 1.0 - tol),
    )


def tlc_from_amplitudes(amplitudes, measure: str, basis: BasisChoice) -> np.ndarray:
    coeffs = basis.coefficients(amplitudes)
    if measure == "l1":
        return pure_l1(coeffs)
    if measure == "reoc":
        return pure_reoc(coeffs)
    raise ValidationError(f"unknown measure {measure!r}")


def coherence_series(traj: Trajectory, measure: str = "l1", basis: BasisChoice = BasisChoice(), rule: str = "trapezoid") -> CoherenceSeries:
    tlc = tlc_from_amplitudes(traj.amplitudes, measure, basis)
    tac = running_average(tlc, rule)
    return CoherenceSeries(traj.grid, tlc, tac, measure, basis.kind)


def local_coherence_series(traj: Trajectory, i: int, j: int, rule: str = "trapezoid") -> CoherenceSeries:
    tlc = pure_pair_l1(traj.amplitudes, i, j)
    return CoherenceSeries(traj.grid, tlc, running_average(tlc, rule), "l1", f"pair{i + 1}{j + 1}")


def max_tac(series: CoherenceSeries):
    value, k = first_argmax(series.tac)
    return float(value), float(series.grid.times[k])


def perfect_transfer_condition(omega_plus: float, omega_minus: float, n_max: int = 50, tol: float = 1e-9):
    """Find odd integers with ``omega_plus / omega_minus = (2n+ + 1) / (2n- + 1)``.

    Returns ``(n_plus, n_minus, tau)`` for the smallest positive transfer time
    ``tau = (2 n_plus + 1) pi / omega_plus`` with ``|n_pm| <= n_max``, or
    ``None`` when no such pair exists.
    """
    if omega_minus == 0:
        raise ValidationError("omega_minus must be nonzero")
    if omega_plus == 0:
        return None
    scale = max(abs(omega_plus), abs(omega_minus))
    best = None
    for n_plus, n_minus in itertools.product(range(-n_max, n_max + 1), repeat=2):
        odd_p, odd_m = 2 * n_plus + 1, 2 * n_minus + 1
        if abs(omega_plus * odd_m - omega_minus * odd_p) > tol * scale:
            continue
        tau = odd_p * math.pi / omega_plus
        if tau <= 0:
            continue
        key = (tau, abs(n_plus) + abs(n_minus))
        if best is None or key < best[0]:
            best = (key, (n_plus, n_minus, tau))
    return None if best is None else best[1]


def exciton_coherence(decomp: ExcitonDecomposition, start_site: int = 0):
    """Time-independent (l1, REOC) of a site-localized start in the exciton basis."""
    c = decomp.eigenvectors[start_site].conj()
    return float(pure_l1(c)), float(pure_reoc(c))
