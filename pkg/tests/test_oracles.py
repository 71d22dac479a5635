import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cohtransfer.checks import dark_state_index, oracle_check, random_perfect_trimer
from cohtransfer.coherence import BasisChoice, pure_l1, pure_reoc
from cohtransfer.errors import ValidationError
from cohtransfer.hamiltonian import DimerForm, NetworkParams, build_hamiltonian, dimer_form, exciton_decomposition, trimer_reduced
from cohtransfer.metrics import exciton_coherence, running_average
from cohtransfer.oracles import (
    TrimerOracle,
    dimer_amplitudes,
    dimer_exciton_coherence,
    dimer_fidelity,
    dimer_peak_coherence_time,
    dimer_peak_site_coherence,
    dimer_site_coherence,
    dimer_tac_asymptote_l1,
    dimer_tac_asymptote_reoc,
    tac_asymptote_l1_from_fmax,
    trimer_dark_overlap,
    trimer_exciton_coherence,
    trimer_f_functions,
)
from cohtransfer.propagation import TimeGrid, trajectory

coupling = st.floats(-0.5, 0.5, allow_nan=False)


def form_of(theta, omega=1.0):
    return DimerForm(omega=omega, theta=theta, E=omega * math.cos(theta), J12=omega * math.sin(theta))


@settings(max_examples=50, deadline=None)
@given(coupling, coupling)
def test_dimer_amplitudes_match_propagation(E, J):
    if math.hypot(E, J) < 1e-3:
        return
    p = NetworkParams.dimer(E, J)
    form = dimer_form(p)
    traj = trajectory(exciton_decomposition(build_hamiltonian(p)), 0, TimeGrid(10.0, 0.01))
    ref = dimer_amplitudes(form, traj.times)
    # equal up to a global phase: compare moduli and the relative phase
    assert np.max(np.abs(np.abs(ref) - traj.f)) < 1e-12
    assert np.max(np.abs(dimer_fidelity(form, traj.times) - traj.f[:, 1])) < 1e-12


def test_dimer_measure_relation():
    form = form_of(1.0)
    t = np.linspace(0, 10, 501)
    l1, re = dimer_site_coherence(form, t)
    amps = dimer_amplitudes(form, t)
    assert np.allclose(l1, pure_l1(amps), atol=1e-12)
    assert np.allclose(re, pure_reoc(amps), atol=1e-12)


def test_peak_coherence():
    assert dimer_peak_site_coherence(form_of(math.pi / 2)) == (1.0, 1.0)
    l1, re = dimer_peak_site_coherence(form_of(0.5))
    assert math.isclose(l1, math.sin(1.0)) and re < 1
    f = form_of(math.pi / 2, 2.0)
    t = dimer_peak_coherence_time(f)
    assert math.isclose(dimer_site_coherence(f, t)[0], 1.0)
    assert dimer_peak_coherence_time(form_of(0.3)) == form_of(0.3).transfer_time


@settings(max_examples=40, deadline=None)
@given(coupling, coupling)
def test_dimer_exciton_coherence(E, J):
    if math.hypot(E, J) < 1e-3:
        return
    p = NetworkParams.dimer(E, J)
    l1, re = exciton_coherence(exciton_decomposition(build_hamiltonian(p)))
    ol1, ore = dimer_exciton_coherence(dimer_form(p))
    assert abs(l1 - ol1) < 1e-12 and abs(re - ore) < 1e-10


def test_asymptote_limits():
    assert dimer_tac_asymptote_l1(form_of(math.pi / 2)) == pytest.approx(2 / math.pi)
    assert dimer_tac_asymptote_l1(form_of(0.0)) == 0.0
    assert tac_asymptote_l1_from_fmax(1.0) == pytest.approx(2 / math.pi)
    with pytest.raises(ValidationError):
        dimer_tac_asymptote_reoc(form_of(1.0), n_points=10)


@pytest.mark.parametrize("theta", [0.3, 0.9, 1.2, math.pi / 2])
def test_asymptote_closed_form_matches_quadrature(theta):
    form = form_of(theta)
    t = np.linspace(0, form.transfer_time, 200001)
    l1, _ = dimer_site_coherence(form, t)
    avg = running_average(l1)[-1]
    assert abs(avg - dimer_tac_asymptote_l1(form)) < 1e-8


def test_reoc_asymptote_quadrature_converged():
    form = form_of(1.0)
    assert abs(dimer_tac_asymptote_reoc(form, 20001) - dimer_tac_asymptote_reoc(form, 80001)) < 1e-6


def test_trimer_oracle_requires_structure():
    with pytest.raises(ValidationError):
        TrimerOracle(trimer_reduced(NetworkParams.trimer(0.3, 0, 0, 0.1, 0.2, 0.1)))


def test_trimer_f_functions_match_propagation():
    rng = np.random.default_rng(5)
    grid = TimeGrid(10.0, 0.01)
    for _ in range(20):
        p = random_perfect_trimer(rng)
        oracle = TrimerOracle(trimer_reduced(p))
        d = exciton_decomposition(build_hamiltonian(p))
        traj = trajectory(d, 0, grid)
        ref = np.stack(trimer_f_functions(oracle, grid.times), axis=-1)
        assert np.max(np.abs(traj.f - ref)) < 1e-12
        k = dark_state_index(d, oracle.form)
        assert abs(d.eigenvectors[1, k]) < 1e-12
        assert abs(abs(d.eigenvectors[0, k]) - trimer_dark_overlap()) < 1e-12


def test_trimer_exciton_coherence_formula():
    rng = np.random.default_rng(6)
    for _ in range(20):
        p = random_perfect_trimer(rng)
        form = trimer_reduced(p)
        l1, re = exciton_coherence(exciton_decomposition(build_hamiltonian(p)))
        ol1, ore = trimer_exciton_coherence(form.r)
        assert abs(l1 - ol1) < 1e-12 and abs(re - ore) < 1e-10
    with pytest.raises(ValidationError):
        trimer_exciton_coherence(1.5)


def test_oracle_check_small():
    devs = oracle_check(seed=1, draws=5, grid=TimeGrid(5.0, 0.01))
    assert max(devs.values()) < 1e-10
