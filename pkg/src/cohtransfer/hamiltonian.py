"""Single-excitation tight-binding Hamiltonians and their reduced forms.

Energies are in units with hbar = 1. Site indices are 0-based throughout the
API; site ``0`` is the initially excited site and site ``n - 1`` the target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._jacobi import jacobi_eigh
from .errors import DegenerateSystemError, ValidationError

HERMITIAN_TOL = 1e-14
STRUCTURE_TOL = 1e-9
_PHASE_TIE = 1e-12


@dataclass(frozen=True)
class NetworkParams:
    """Site energies ``E_i`` and real symmetric couplings ``J_ij``."""

    site_energies: np.ndarray
    couplings: np.ndarray

    def __post_init__(self):
        e = np.array(self.site_energies, dtype=float).reshape(-1)
        j = np.array(self.couplings, dtype=float)
        n = e.size
        if n < 2:
            raise ValidationError("n_sites must be >= 2")
        if j.shape != (n, n):
            raise ValidationError(f"couplings must have shape ({n}, {n}), got {j.shape}")
        if not (np.all(np.isfinite(e)) and np.all(np.isfinite(j))):
            raise ValidationError("parameters must be finite")
        if np.any(np.diag(j) != 0.0):
            raise ValidationError("couplings must have a zero diagonal")
        if np.any(j != j.T):
            raise ValidationError("couplings must be symmetric")
        e.setflags(write=False)
        j.setflags(write=False)
        object.__setattr__(self, "site_energies", e)
        object.__setattr__(self, "couplings", j)

    @property
    def n_sites(self) -> int:
        return self.site_energies.size

    @classmethod
    def dimer(cls, E: float, J12: float) -> "NetworkParams":
        """Dimer with site energies ``(E, -E)``."""
        return cls([E, -E], [[0.0, J12], [J12, 0.0]])

    @classmethod
    def trimer(cls, E1: float, E2: float, E3: float, J12: float, J23: float, J13: float) -> "NetworkParams":
        return cls(
            [E1, E2, E3],
            [[0.0, J12, J13], [J12, 0.0, J23], [J13, J23, 0.0]],
        )


@dataclass(frozen=True)
class HermitianOperator:
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError("operator must be a square matrix")
        if np.max(np.abs(m - m.conj().T), initial=0.0) > HERMITIAN_TOL:
            raise ValidationError("operator is not Hermitian")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class ExcitonDecomposition:
    """Eigenpairs sorted by ascending energy; column ``k`` is ``|e_k>``."""

    energies: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.energies.size

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.energies) @ v.conj().T


def build_hamiltonian(params: NetworkParams) -> HermitianOperator:
    h = np.array(params.couplings, dtype=complex)
    h[np.diag_indices(params.n_sites)] = params.site_energies
    return HermitianOperator(h)


def fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-modulus entry is real and positive.

    Moduli within ``1e-12`` of the column maximum count as ties; the lowest
    index wins. Works on a single matrix or a stack of matrices.
    """
    v = np.asarray(vectors, dtype=complex)
    mag = np.abs(v)
    top = np.max(mag, axis=-2, keepdims=True)
    lead = np.argmax(mag >= top - _PHASE_TIE, axis=-2)
    pivot = np.take_along_axis(v, lead[..., None, :], axis=-2)
    pmag = np.abs(pivot)
    phase = np.where(pmag > 0, np.conj(pivot) / np.where(pmag > 0, pmag, 1.0), 1.0)
    return v * phase


def sorted_eigh(h: np.ndarray):
    """Batched Jacobi, then ascending sort (stable) and phase fixing."""
    w, v = jacobi_eigh(h)
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    v = np.take_along_axis(v, order[..., None, :], axis=-1)
    return w, fix_phases(v)


def exciton_decomposition(H: HermitianOperator) -> ExcitonDecomposition:
    w, v = sorted_eigh(H.entries)
    w.setflags(write=False)
    v.setflags(write=False)
    return ExcitonDecomposition(w, v)


@dataclass(frozen=True)
class DimerForm:
    """``H = omega [cos(theta) sz + sin(theta) sx]`` up to a zero-point shift.

    ``theta`` is ``atan2(|J12|, E)`` so it always lies in ``[0, pi]``; the sign
    of ``J12`` only enters the phase of the site-2 amplitude.
    """

    omega: float
    theta: float
    E: float
    J12: float

    @property
    def fidelity_max(self) -> float:
        return math.sin(self.theta)

    @property
    def revival_time(self) -> float:
        return math.pi / self.omega

    @property
    def transfer_time(self) -> float:
        return math.pi / (2.0 * self.omega)


def dimer_form(params: NetworkParams) -> DimerForm:
    if params.n_sites != 2:
        raise ValidationError("dimer_form requires n_sites == 2")
    E = 0.5 * (params.site_energies[0] - params.site_energies[1])
    J = params.couplings[0, 1]
    omega = math.hypot(E, J)
    if omega == 0.0:
        raise DegenerateSystemError("E = J12 = 0: no dynamics, theta undefined")
    return DimerForm(omega=omega, theta=math.atan2(abs(J), E), E=float(E), J12=float(J))


@dataclass(frozen=True)
class TrimerReducedForm:
    """Trimer written as ``E13 (|1><1| - |3><3|) + Etilde |2><2| + couplings``.

    The perfect-transfer fields (``sigma`` onward) are ``None`` unless
    ``E13 == 0`` and ``|J12| == |J23|`` hold to within the detection tolerance.
    """

    E13: float
    Etilde: float
    J12: float
    J23: float
    J13: float
    sigma: Optional[int] = None
    vartheta: Optional[float] = None
    r: Optional[float] = None
    omega_plus: Optional[float] = None
    omega_minus: Optional[float] = None
    # includes the zero-point shift (E1 + E3) / 2, so it is an eigenvalue of H itself
    dark_energy: Optional[float] = None

    @property
    def has_structure(self) -> bool:
        return self.sigma is not None


def trimer_frequencies(Etilde, J23, J13, sigma):
    """Exciton gaps ``omega_pm = E_pm - E_dark`` of the perfect-transfer trimer."""
    mean = 0.5 * (Etilde + 3.0 * sigma * J13)
    half = 0.5 * math.sqrt((Etilde - sigma * J13) ** 2 + 8.0 * J23 * J23)
    return mean + half, mean - half


def trimer_reduced(params: NetworkParams, tol: float = STRUCTURE_TOL, sigma: Optional[int] = None) -> TrimerReducedForm:
    """Reduce a trimer to ``(E13, Etilde)`` form and detect perfect-transfer structure.

    When both chain couplings vanish the parity is not determined by the
    Hamiltonian; pass ``sigma`` explicitly to obtain the ``J23 = 0`` branch.
    """
    if params.n_sites != 3:
        raise ValidationError("trimer_reduced requires n_sites == 3")
    E1, E2, E3 = params.site_energies
    J = params.couplings
    J12, J23, J13 = float(J[0, 1]), float(J[1, 2]), float(J[0, 2])
    E13 = 0.5 * (E1 - E3)
    Etilde = E2 - 0.5 * (E1 + E3)
    base = dict(E13=float(E13), Etilde=float(Etilde), J12=J12, J23=J23, J13=J13)

    if abs(E13) > tol or abs(abs(J12) - abs(J23)) > tol:
        return TrimerReducedForm(**base)
    if abs(J23) > tol:
        s = 1 if J12 / J23 > 0 else -1
    elif sigma is not None:
        if sigma not in (1, -1):
            raise ValidationError("sigma must be +1 or -1")
        s = sigma
    else:
        return TrimerReducedForm(**base)

    vartheta = math.atan2(2.0 * math.sqrt(2.0) * abs(J23), Etilde - s * J13)
    w_plus, w_minus = trimer_frequencies(Etilde, J23, J13, s)
    return TrimerReducedForm(
        **base,
        sigma=s,
        vartheta=vartheta,
        r=abs(math.sin(0.5 * vartheta)),
        omega_plus=w_plus,
        omega_minus=w_minus,
        dark_energy=0.5 * (E1 + E3) - s * J13,
    )
