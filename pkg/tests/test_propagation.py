import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cohtransfer.errors import ValidationError
from cohtransfer.hamiltonian import NetworkParams, build_hamiltonian, exciton_decomposition
from cohtransfer.propagation import TimeGrid, density_matrix, propagate, site_state, trajectory

coupling = st.floats(-0.5, 0.5, allow_nan=False)


def expm_hermitian(h, t):
    # independent reference: LAPACK eigh
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


def test_grid_counts():
    assert TimeGrid(10.0, 0.001).count == 10001
    assert TimeGrid(10.0, 0.01).count == 1001
    assert TimeGrid(1.0, 0.3).count == 4
    t = TimeGrid(10.0, 0.001).times
    assert t[0] == 0.0 and math.isclose(t[-1], 10.0)
    with pytest.raises(ValidationError):
        TimeGrid(10.0, 0.0)


def test_propagate_zero_time_is_identity():
    d = exciton_decomposition(build_hamiltonian(NetworkParams.dimer(0.3, 0.4)))
    psi = site_state(2, 0)
    assert np.array_equal(propagate(d, psi, 0.0), psi)


def test_resonant_dimer_full_transfer():
    d = exciton_decomposition(build_hamiltonian(NetworkParams.dimer(0.0, 1.0)))
    out = propagate(d, site_state(2, 0), math.pi / 2)
    assert abs(abs(out[1]) - 1.0) < 1e-12


def test_rejects_bad_state():
    d = exciton_decomposition(build_hamiltonian(NetworkParams.dimer(0.0, 1.0)))
    with pytest.raises(ValidationError):
        propagate(d, np.array([1.0, 1.0]), 1.0)
    with pytest.raises(ValidationError):
        propagate(d, np.array([1.0, 0.0, 0.0]), 1.0)
    with pytest.raises(ValidationError):
        site_state(2, 2)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=3, max_size=3), st.lists(coupling, min_size=3, max_size=3), st.floats(0, 20))
def test_propagation_matches_reference_and_is_unitary(e, j, t):
    H = build_hamiltonian(NetworkParams.trimer(*e, *j))
    d = exciton_decomposition(H)
    psi = site_state(3, 0)
    out = propagate(d, psi, t)
    assert abs(np.linalg.norm(out) - 1.0) <= 1e-12
    assert np.max(np.abs(out - expm_hermitian(H.entries, t) @ psi)) < 1e-11


@settings(max_examples=30, deadline=None)
@given(coupling, coupling, st.floats(0, 10), st.floats(0, 10))
def test_group_property(E, J, t1, t2):
    d = exciton_decomposition(build_hamiltonian(NetworkParams.dimer(E, J)))
    psi = site_state(2, 0)
    a = propagate(d, propagate(d, psi, t1), t2)
    b = propagate(d, psi, t1 + t2)
    assert np.max(np.abs(a - b)) < 1e-12


def test_trajectory_shape_and_norm():
    d = exciton_decomposition(build_hamiltonian(NetworkParams.trimer(0.2, -0.8, 0, -0.5, -0.1, -0.5)))
    traj = trajectory(d, 0, TimeGrid(10.0, 0.01))
    assert traj.amplitudes.shape == (1001, 3)
    assert np.array_equal(traj.f[0], [1.0, 0.0, 0.0])
    assert np.max(np.abs(np.sum(traj.f ** 2, axis=1) - 1.0)) < 1e-12


def test_density_matrix_pure():
    psi = np.array([0.6, 0.8j])
    rho = density_matrix(psi)
    assert np.allclose(rho @ rho, rho) and math.isclose(np.trace(rho).real, 1.0)
