"""Cyclic Jacobi eigensolver for stacks of small Hermitian matrices."""

import numpy as np

OFF_TOL = 1e-14
MAX_SWEEPS = 60
# off-diagonal entries below this (relative to ||h||_F) are left alone
TINY = 1e-290


def _off_norm(a):
    d = a.shape[-1]
    mask = ~np.eye(d, dtype=bool)
    return np.sqrt(np.sum(np.abs(a[..., mask]) ** 2, axis=-1))


def jacobi_eigh(h, tol=OFF_TOL, max_sweeps=MAX_SWEEPS):
    """Diagonalize one Hermitian matrix or a stack of them.

    Parameters
    ----------
    h : array_like, shape (..., d, d)
        Hermitian input. Only exact Hermiticity of the input is assumed; the
        strictly lower triangle is never trusted over the upper one.
    tol : float
        Sweeps stop once the off-diagonal Frobenius norm of every matrix in
        the stack is at most ``tol * ||h||_F``.

    Returns
    -------
    w : ndarray, shape (..., d)
        Eigenvalues in solver order (unsorted).
    v : ndarray, shape (..., d, d), complex
        Unitary matrix whose columns are the eigenvectors.
    """
    a = np.array(h, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise ValueError("expected square matrices")
    batch_shape = a.shape[:-2]
    d = a.shape[-1]
    a = a.reshape((-1, d, d))
    a = 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))
    v = np.broadcast_to(np.eye(d, dtype=complex), a.shape).copy()
    # work on a unit-norm copy so tiny or huge inputs cannot over/underflow
    scale = np.sqrt(np.sum(np.abs(a) ** 2, axis=(-1, -2)))
    unit = np.where(scale > 0, scale, 1.0)
    a = a / unit[:, None, None]
    limit = tol * np.where(scale > 0, 1.0, 0.0)

    pairs = [(p, q) for p in range(d - 1) for q in range(p + 1, d)]
    for _ in range(max_sweeps):
        active = _off_norm(a) > limit
        if not np.any(active):
            break
        for p, q in pairs:
            apq = a[:, p, q]
            g = np.abs(apq)
            live = active & (g > TINY)
            if not np.any(live):
                continue
            phase = np.where(live, apq / np.where(g > 0, g, 1.0), 1.0)
            app = a[:, p, p].real
            aqq = a[:, q, q].real
            gsafe = np.where(live, g, 1.0)
            theta = (aqq - app) / (2.0 * gsafe)
            t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t = np.where(theta == 0.0, 1.0, t)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            c = np.where(live, c, 1.0)
            s = np.where(live, s, 0.0)
            # rotation block [[c, s*phase], [-s*conj(phase), c]] on columns p, q
            sp = (s * phase)[:, None]
            cc = c[:, None]
            col_p = a[:, :, p].copy()
            col_q = a[:, :, q].copy()
            a[:, :, p] = cc * col_p - np.conj(sp) * col_q
            a[:, :, q] = sp * col_p + cc * col_q
            row_p = a[:, p, :].copy()
            row_q = a[:, q, :].copy()
            a[:, p, :] = cc * row_p - sp * row_q
            a[:, q, :] = np.conj(sp) * row_p + cc * row_q
            a[:, p, q] = np.where(live, 0.0, a[:, p, q])
            a[:, q, p] = np.where(live, 0.0, a[:, q, p])
            vp = v[:, :, p].copy()
            vq = v[:, :, q].copy()
            v[:, :, p] = cc * vp - np.conj(sp) * vq
            v[:, :, q] = sp * vp + cc * vq
    else:
        if np.any(_off_norm(a) > limit):
            raise RuntimeError("Jacobi iteration did not converge")

    w = np.real(np.diagonal(a, axis1=-2, axis2=-1)) * unit[:, None]
    return w.reshape(batch_shape + (d,)), v.reshape(batch_shape + (d, d))
