"""Exact propagation through the exciton basis."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .hamiltonian import ExcitonDecomposition

NORM_TOL = 1e-12


@dataclass(frozen=True)
class TimeGrid:
    """Samples ``t_k = k * dt`` for ``k = 0 .. floor(t_max / dt)``."""

    t_max: float
    dt: float

    def __post_init__(self):
        if not (self.t_max > 0 and self.dt > 0):
            raise ValidationError("t_max and dt must be positive")

    @property
    def count(self) -> int:
        # guard against 10 / 0.001 = 9999.999...
        return int(math.floor(self.t_max / self.dt + 1e-9)) + 1

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.count) * self.dt


@dataclass(frozen=True)
class Trajectory:
    grid: TimeGrid
    amplitudes: np.ndarray
    start_site: int

    @property
    def f(self) -> np.ndarray:
        """Moduli ``f_i(t_k) = |<i|U(t_k)|start>|``, shape ``(count, d)``."""
        return np.abs(self.amplitudes)

    @property
    def times(self) -> np.ndarray:
        return self.grid.times


def site_state(d: int, i: int) -> np.ndarray:
    if not 0 <= i < d:
        raise ValidationError(f"site index {i} out of range for d={d}")
    psi = np.zeros(d, dtype=complex)
    psi[i] = 1.0
    return psi


def _check_state(psi, d):
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (d,):
        raise ValidationError(f"state has shape {psi.shape}, expected ({d},)")
    if abs(np.linalg.norm(psi) - 1.0) > NORM_TOL:
        raise ValidationError("state is not normalized")
    return psi


def evolve_amplitudes(energies, eigenvectors, start, times):
    """``sum_k exp(-i E_k t) <e_k|start> |e_k>`` for every t.

    Accepts stacked decompositions: ``energies`` (..., d), ``eigenvectors``
    (..., d, d), ``start`` (..., d), ``times`` (T,). Returns (..., T, d).
    """
    energies = np.asarray(energies)
    v = np.asarray(eigenvectors)
    coeff = np.einsum("...ik,...i->...k", v.conj(), start)
    phases = np.exp(-1j * energies[..., None, :] * np.asarray(times)[:, None])
    return np.einsum("...ik,...tk->...ti", v, phases * coeff[..., None, :])


def propagate(decomp: ExcitonDecomposition, start, t: float) -> np.ndarray:
    psi = _check_state(start, decomp.dim)
    if t == 0:
        return psi.copy()
    return evolve_amplitudes(decomp.energies, decomp.eigenvectors, psi, np.array([t]))[0]


def trajectory(decomp: ExcitonDecomposition, start_site: int, grid: TimeGrid) -> Trajectory:
    psi = site_state(decomp.dim, start_site)
    amps = evolve_amplitudes(decomp.energies, decomp.eigenvectors, psi, grid.times)
    amps[0] = psi
    amps.setflags(write=False)
    return Trajectory(grid=grid, amplitudes=amps, start_site=start_site)


def density_matrix(state) -> np.ndarray:
    psi = np.asarray(state, dtype=complex)
    if abs(np.linalg.norm(psi) - 1.0) > NORM_TOL:
        raise ValidationError("state is not normalized")
    return np.outer(psi, psi.conj())
