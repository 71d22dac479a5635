"""Closed-form dimer and perfect-transfer trimer results.

These are reference values for the numerical pipeline and never call it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coherence import binary_entropy
from .errors import ValidationError
from .hamiltonian import DimerForm, TrimerReducedForm

SQRT2 = math.sqrt(2.0)


def dimer_amplitudes(form: DimerForm, t):
    """Site amplitudes of ``U(t)|1>`` for the dimer, shape ``(..., 2)``."""
    t = np.asarray(t, dtype=float)
    wt = form.omega * t
    sign = -1.0 if form.J12 < 0 else 1.0
    a1 = np.cos(wt) - 1j * math.cos(form.theta) * np.sin(wt)
    a2 = -1j * sign * math.sin(form.theta) * np.sin(wt)
    return np.stack([a1, a2], axis=-1)


def dimer_fidelity(form: DimerForm, t):
    return math.sin(form.theta) * np.abs(np.sin(form.omega * np.asarray(t, dtype=float)))


def dimer_site_coherence(form: DimerForm, t):
    """Site-basis ``(l1, reoc)`` as functions of the fidelity: ``2F sqrt(1-F^2)`` and ``h(F^2)``."""
    F = dimer_fidelity(form, t)
    l1 = 2.0 * F * np.sqrt(np.clip(1.0 - F * F, 0.0, None))
    return l1, binary_entropy(F * F)


def dimer_peak_coherence_time(form: DimerForm) -> float:
    s = math.sin(form.theta)
    if s * SQRT2 < 1.0:
        return form.transfer_time
    return math.asin(min(1.0, 1.0 / (SQRT2 * s))) / form.omega


def dimer_peak_site_coherence(form: DimerForm):
    """Maximum over time of the site-basis (l1, reoc)."""
    if form.theta <= math.pi / 4 or form.theta >= 3 * math.pi / 4:
        s = math.sin(form.theta)
        return abs(math.sin(2.0 * form.theta)), float(binary_entropy(s * s))
    return 1.0, 1.0


def dimer_exciton_coherence(form: DimerForm):
    s = math.sin(form.theta)
    l1 = s
    reoc = float(binary_entropy(0.5 * (1.0 + math.sqrt(max(0.0, 1.0 - s * s)))))
    return l1, reoc


def dimer_tac_asymptote_l1(form: DimerForm) -> float:
    """Long-time limit of the site-basis running l1 average.

    Equals the average over one transfer period:
    ``(2/pi) [sin(theta) + cos^2(theta) ln((1 + sin(theta)) / cos(theta))]``.
    """
    s = math.sin(form.theta)
    c = abs(math.cos(form.theta))
    if s == 0.0:
        return 0.0
    if c == 0.0:
        return 2.0 / math.pi
    return 2.0 / math.pi * (s + c * c * math.log((1.0 + s) / c))


def tac_asymptote_l1_from_fmax(f_max: float) -> float:
    return dimer_tac_asymptote_l1(DimerForm(omega=1.0, theta=math.asin(f_max), E=0.0, J12=0.0))


def dimer_tac_asymptote_reoc(form: DimerForm, n_points: int = 20001) -> float:
    """One-period average of ``h(F(t)^2)`` by composite trapezoid on ``n_points`` samples."""
    if n_points < 100:
        raise ValidationError("n_points must be >= 100")
    t = np.linspace(0.0, form.transfer_time, n_points)
    F = dimer_fidelity(form, t)
    vals = binary_entropy(F * F)
    integral = np.sum(0.5 * (vals[1:] + vals[:-1])) * (t[1] - t[0])
    return float(integral / form.transfer_time)


@dataclass(frozen=True)
class TrimerOracle:
    form: TrimerReducedForm

    def __post_init__(self):
        if not self.form.has_structure:
            raise ValidationError("trimer oracle requires E13 = 0 and |J12| = |J23|")

    @property
    def weights(self):
        half = 0.5 * self.form.vartheta
        return math.sin(half) ** 2, math.cos(half) ** 2


def trimer_fidelity(oracle: TrimerOracle, t):
    return trimer_f_functions(oracle, t)[2]


def trimer_f_functions(oracle: TrimerOracle, t):
    """Moduli ``(f1, f2, f3)`` of the site amplitudes of ``U(t)|1>``."""
    t = np.asarray(t, dtype=float)
    form = oracle.form
    sp, cm = oracle.weights
    ep = np.exp(-1j * form.omega_plus * t)
    em = np.exp(-1j * form.omega_minus * t)
    f1 = 0.5 * np.abs(1.0 + ep * sp + em * cm)
    f2 = np.abs(math.sin(form.vartheta) * np.sin(0.5 * (form.omega_plus - form.omega_minus) * t)) / SQRT2
    f3 = 0.5 * np.abs(1.0 - ep * sp - em * cm)
    return f1, f2, f3


def trimer_exciton_coherence(r):
    """``(r + sqrt(1-r^2) + r sqrt(1-r^2), 1 + h(r^2)/2)`` for ``r = |sin(vartheta/2)|``."""
    r = np.asarray(r, dtype=float)
    if np.any((r < 0) | (r > 1)):
        raise ValidationError("r must lie in [0, 1]")
    q = np.sqrt(1.0 - r * r)
    return r + q + r * q, 1.0 + 0.5 * binary_entropy(r * r)


def trimer_dark_overlap() -> float:
    """``|<e_d|1>|``, independent of the Hamiltonian parameters."""
    return 1.0 / SQRT2
