"""Randomized pipeline-versus-closed-form comparisons used by ``oracle-check``."""

from __future__ import annotations

import numpy as np

from .hamiltonian import NetworkParams, build_hamiltonian, dimer_form, exciton_decomposition, trimer_reduced
from .metrics import tlc_from_amplitudes
from .coherence import BasisChoice
from .oracles import TrimerOracle, dimer_fidelity, dimer_site_coherence, trimer_dark_overlap, trimer_f_functions
from .propagation import TimeGrid, trajectory

ORACLE_TOL = 1e-9


def random_dimer(rng) -> NetworkParams:
    E, J = rng.uniform(-0.5, 0.5, size=2)
    return NetworkParams.dimer(E, J)


def random_perfect_trimer(rng) -> NetworkParams:
    """``E13 = 0``, ``J12 = sigma J23`` with the remaining parameters uniform."""
    Etilde = rng.uniform(-1.0, 1.0)
    J23, J13 = rng.uniform(-0.5, 0.5, size=2)
    sigma = rng.choice([-1, 1])
    zero_point = rng.uniform(-0.5, 0.5)
    return NetworkParams.trimer(zero_point, zero_point + Etilde, zero_point, sigma * J23, J23, J13)


def dimer_deviation(params: NetworkParams, grid: TimeGrid) -> float:
    form = dimer_form(params)
    traj = trajectory(exciton_decomposition(build_hamiltonian(params)), 0, grid)
    t = grid.times
    l1, re = dimer_site_coherence(form, t)
    site = BasisChoice.site()
    return max(
        np.max(np.abs(traj.f[:, 1] - dimer_fidelity(form, t))),
        np.max(np.abs(tlc_from_amplitudes(traj.amplitudes, "l1", site) - l1)),
        np.max(np.abs(tlc_from_amplitudes(traj.amplitudes, "reoc", site) - re)),
    )


def dark_state_index(decomp, form) -> int:
    v = decomp.eigenvectors
    score = np.abs(decomp.energies - form.dark_energy) + np.abs(v[1, :])
    return int(np.argmin(score))


def trimer_deviation(params: NetworkParams, grid: TimeGrid):
    """Max deviation of ``f_1..f_3`` and of ``|<e_d|1>|`` from closed forms."""
    form = trimer_reduced(params)
    oracle = TrimerOracle(form)
    decomp = exciton_decomposition(build_hamiltonian(params))
    traj = trajectory(decomp, 0, grid)
    ref = np.stack(trimer_f_functions(oracle, grid.times), axis=-1)
    k = dark_state_index(decomp, form)
    overlap = abs(decomp.eigenvectors[0, k])
    return float(np.max(np.abs(traj.f - ref))), abs(overlap - trimer_dark_overlap())


def oracle_check(seed: int = 0, draws: int = 100, grid: TimeGrid = TimeGrid(10.0, 0.001)) -> dict:
    rng = np.random.default_rng(seed)
    dimer = max(dimer_deviation(random_dimer(rng), grid) for _ in range(draws))
    tri = [trimer_deviation(random_perfect_trimer(rng), grid) for _ in range(draws)]
    return {
        "dimer_max_dev": float(dimer),
        "trimer_max_dev": max(a for a, _ in tri),
        "dark_overlap_max_dev": max(b for _, b in tri),
    }
