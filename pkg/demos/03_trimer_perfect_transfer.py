"""Perfect transfer in a three-site network.

With E1 = E3 and |J12| = |J23| the site-1 state overlaps a dark exciton
that never touches site 2. Transfer to site 3 is complete exactly when the
two exciton gaps omega+ and omega- stand in a ratio of odd integers.
"""
import math

import numpy as np

from cohtransfer import NetworkParams, TimeGrid, build_hamiltonian, exciton_decomposition, fidelity_series, propagate, trajectory, trimer_reduced
from cohtransfer.metrics import perfect_transfer_condition
from cohtransfer.propagation import site_state

# Lambda system: equal couplings on resonance, no direct 1-3 link
J = 0.3
lam = NetworkParams.trimer(0.0, 0.0, 0.0, J, J, 0.0)
form = trimer_reduced(lam)
print(f"sigma = {form.sigma}, omega+ = {form.omega_plus:.4f}, omega- = {form.omega_minus:.4f}")
n_p, n_m, tau = perfect_transfer_condition(form.omega_plus, form.omega_minus)
print(f"odd ratio ({2 * n_p + 1})/({2 * n_m + 1}), transfer time {tau:.4f} = pi/(sqrt2 J) = {math.pi / (math.sqrt(2) * J):.4f}")
out = propagate(exciton_decomposition(build_hamiltonian(lam)), site_state(3, 0), tau)
print(f"F(tau) = {abs(out[2]):.12f}")

# with J13 = 0 and J23^2 = 3 Etilde^2 / 8 the gaps are omega+ = -3 omega-
Et = 1.0
J23 = math.sqrt(3.0 / 8.0)
p3 = NetworkParams.trimer(0.0, Et, 0.0, J23, J23, 0.0)
f3 = trimer_reduced(p3)
print(f"\nomega+/omega- = {f3.omega_plus / f3.omega_minus:.4f}")
n_p, n_m, tau = perfect_transfer_condition(f3.omega_plus, f3.omega_minus)
out = propagate(exciton_decomposition(build_hamiltonian(p3)), site_state(3, 0), tau)
print(f"odd ratio ({2 * n_p + 1})/({2 * n_m + 1}), tau = {tau:.4f}, F(tau) = {abs(out[2]):.12f}")

# ratio 2 is not odd/odd: transfer stays incomplete however long we wait
J23 = math.sqrt(0.12)
p2 = NetworkParams.trimer(0.0, 0.9, 0.0, J23, J23, 0.7)
f2 = trimer_reduced(p2)
print(f"\nomega+ = {f2.omega_plus:.4f}, omega- = {f2.omega_minus:.4f}")
print("perfect-transfer condition:", perfect_transfer_condition(f2.omega_plus, f2.omega_minus))
traj = trajectory(exciton_decomposition(build_hamiltonian(p2)), 0, TimeGrid(50.0, 0.001))
print(f"max F over t in [0, 50] = {fidelity_series(traj).f_max:.4f}")

d = exciton_decomposition(build_hamiltonian(p2))
k = int(np.argmin(np.abs(d.eigenvectors[1])))
print(f"dark exciton: |<e_d|1>| = {abs(d.eigenvectors[0, k]):.6f}, |<e_d|2>| = {abs(d.eigenvectors[1, k]):.1e}")
