"""l1-norm and relative entropy of coherence, local pair coherence.

All entropies are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._jacobi import jacobi_eigh
from .errors import ValidationError
from .hamiltonian import ExcitonDecomposition

TRACE_TOL = 1e-10
HERMITIAN_TOL = 1e-10
CLAMP = 1e-9


@dataclass(frozen=True)
class BasisChoice:
    kind: str = "site"
    decomposition: Optional[ExcitonDecomposition] = None

    def __post_init__(self):
        if self.kind not in ("site", "exciton"):
            raise ValidationError(f"unknown basis kind {self.kind!r}")
        if self.kind == "exciton" and self.decomposition is None:
            raise ValidationError("exciton basis needs a decomposition")

    @classmethod
    def site(cls) -> "BasisChoice":
        return cls("site")

    @classmethod
    def exciton(cls, decomposition: ExcitonDecomposition) -> "BasisChoice":
        return cls("exciton", decomposition)

    def express(self, rho: np.ndarray) -> np.ndarray:
        if self.kind == "site":
            return rho
        v = self.decomposition.eigenvectors
        if v.shape[0] != rho.shape[0]:
            raise ValidationError("basis and density matrix dimensions differ")
        return v.conj().T @ rho @ v

    def coefficients(self, amplitudes: np.ndarray) -> np.ndarray:
        """Pure-state amplitudes (..., d) re-expressed in this basis."""
        if self.kind == "site":
            return np.asarray(amplitudes)
        return np.asarray(amplitudes) @ self.decomposition.eigenvectors.conj()


def _validate(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValidationError("density matrix must be square")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise ValidationError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > TRACE_TOL:
        raise ValidationError("density matrix trace differs from 1")
    return rho


def shannon(p, axis=-1) -> np.ndarray:
    """Shannon entropy in bits with ``0 log 0 = 0``."""
    p = np.asarray(p, dtype=float)
    safe = np.where(p > 0, p, 1.0)
    return -np.sum(np.where(p > 0, p * np.log2(safe), 0.0), axis=axis)


def binary_entropy(x):
    x = np.asarray(x, dtype=float)
    return shannon(np.stack([x, 1.0 - x], axis=-1))


def von_neumann(rho) -> float:
    w, _ = jacobi_eigh(rho)
    if np.min(w) < -CLAMP:
        raise ValidationError(f"density matrix has eigenvalue {np.min(w):.3e} < 0")
    return float(shannon(np.clip(w, 0.0, None)))


def l1_coherence(rho, basis: BasisChoice = BasisChoice()) -> float:
    r = basis.express(_validate(rho))
    iu = np.triu_indices(r.shape[0], 1)
    return float(2.0 * np.sum(np.abs(r[iu])))


def reoc(rho, basis: BasisChoice = BasisChoice()) -> float:
    rho = _validate(rho)
    diag = np.real(np.diagonal(basis.express(rho)))
    s_vn = von_neumann(rho)
    return float(shannon(np.clip(diag, 0.0, None)) - s_vn)


def local_pair_coherence(rho_site, i: int, j: int) -> float:
    rho = np.asarray(rho_site)
    d = rho.shape[0]
    if i == j:
        raise ValidationError("pair coherence needs two distinct sites")
    if not (0 <= i < d and 0 <= j < d):
        raise ValidationError("site index out of range")
    return float(2.0 * abs(rho[i, j]))


def mcs_bounds(d: int):
    """``(d - 1, log2 d)``: the l1 and REOC values of the maximally coherent state."""
    if d < 2:
        raise ValidationError("dimension must be >= 2")
    return float(d - 1), math.log2(d)


def maximally_coherent_state(d: int) -> np.ndarray:
    return np.full(d, 1.0 / math.sqrt(d), dtype=complex)


# Vectorized pure-state shortcuts: for |psi> the l1-norm is (sum_i |c_i|)^2 - 1
# and REOC is the Shannon entropy of |c_i|^2.

def pure_l1(coeffs) -> np.ndarray:
    m = np.abs(coeffs)
    d = m.shape[-1]
    total = np.zeros(m.shape[:-1])
    for i in range(d):
        for j in range(i + 1, d):
            total = total + m[..., i] * m[..., j]
    return 2.0 * total


def pure_reoc(coeffs) -> np.ndarray:
    return shannon(np.abs(coeffs) ** 2)


def pure_pair_l1(coeffs, i: int, j: int) -> np.ndarray:
    m = np.abs(coeffs)
    return 2.0 * m[..., i] * m[..., j]
