"""Independent two-qubit concurrence used as a reference in tests."""

import numpy as np


def pair_ensemble(psi, i, j):
    """Qubits (i, j) of a single-excitation trimer state in the 8-dim qubit space.

    Returns a 4x2 matrix whose columns are the unnormalized pure states of the
    pair conditioned on the remaining qubit, so ``t @ t^H`` is the reduced state.
    """
    full = np.zeros(8, dtype=complex)
    for site in range(3):
        full[1 << (2 - site)] = psi[site]
    t = full.reshape(2, 2, 2)
    other = [k for k in range(3) if k not in (i, j)][0]
    return np.moveaxis(t, [i, j, other], [0, 1, 2]).reshape(4, 2)


def wootters(ensemble):
    """Concurrence from any pure-state decomposition of a two-qubit state.

    The ``lambda_i`` are the singular values of ``tau = V^T (sy x sy) V``;
    this avoids square roots of round-off eigenvalues.
    """
    sy = np.array([[0, -1j], [1j, 0]])
    tau = ensemble.T @ np.kron(sy, sy) @ ensemble
    lam = np.zeros(4)
    sv = np.linalg.svd(tau, compute_uv=False)
    lam[: sv.size] = sv
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])
