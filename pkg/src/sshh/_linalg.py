"""Dependency-free Hermitian eigensolvers (numba-compiled).

Cyclic Jacobi with a fixed row-major sweep order: bit-reproducible for a
given input, no LAPACK.  Sufficient for the matrix sizes this package
diagonalizes (single-particle 2N x 2N, oracle sectors up to ~10^3).
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

JACOBI_MAX_SWEEPS = 100
JACOBI_TOL = 1e-12


@njit(cache=True)
def _jacobi_kernel(a, v, tol, max_sweeps):
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += abs(a[p, q]) ** 2
        if math.sqrt(2.0 * off) <= tol:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                beta = a[p, q]
                ab = abs(beta)
                if ab == 0.0:
                    continue
                alpha = a[p, p].real
                gamma = a[q, q].real
                tau = (gamma - alpha) / (2.0 * ab)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(tau * tau + 1.0))
                else:
                    t = -1.0 / (-tau + math.sqrt(tau * tau + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = (t * c) * (beta / ab)
                sc = np.conj(s)
                # A <- J^dag A J with J = [[c, s], [-conj(s), c]] on (p, q)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - sc * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = sc * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = complex(a[p, p].real, 0.0)
                a[q, q] = complex(a[q, q].real, 0.0)
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - sc * vkq
                    v[k, q] = s * vkp + c * vkq
    return -1


def jacobi_eigh(matrix: np.ndarray, tol: float = JACOBI_TOL,
                max_sweeps: int = JACOBI_MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, eigenvector columns).  Ties keep the
    order in which the diagonal entries settle (stable sort).  Raises
    NumericError if the off-diagonal norm fails to meet tolerance within
    the sweep cap.
    """
    from .errors import NumericError

    a = np.array(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    n = a.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=np.complex128)
    herm_dev = np.max(np.abs(a - a.conj().T))
    scale = max(1.0, float(np.linalg.norm(a)))
    if herm_dev > 1e-10 * scale:
        raise ValueError(f"matrix is not Hermitian (deviation {herm_dev:.3e})")
    v = np.eye(n, dtype=np.complex128)
    sweeps = _jacobi_kernel(a, v, tol * scale, max_sweeps)
    if sweeps < 0:
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        raise NumericError(
            f"Jacobi failed to converge in {max_sweeps} sweeps; off-norm {off:.3e}")
    eigenvalues = np.diag(a).real.copy()
    order = np.argsort(eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]


def power_iteration_ground(matrix: np.ndarray, tol: float = 1e-10,
                           max_iter: int = 100_000, seed: int = 7) -> tuple[float, np.ndarray]:
    """Lowest eigenpair via power iteration on (sigma*I - H), sigma from the
    Gershgorin upper bound.  Fallback for dimensions where Jacobi is too slow."""
    from .errors import NumericError

    h = np.asarray(matrix, dtype=np.complex128)
    n = h.shape[0]
    sigma = float(np.max(np.diag(h).real + np.sum(np.abs(h), axis=1) - np.abs(np.diag(h))))
    rng = np.random.Generator(np.random.Philox(key=seed))
    x = rng.normal(size=n) + 1j * rng.normal(size=n)
    x /= np.linalg.norm(x)
    mu = 0.0
    for _ in range(max_iter):
        y = sigma * x - h @ x
        mu = float(np.vdot(x, y).real)
        res = float(np.linalg.norm(y - mu * x))
        ny = float(np.linalg.norm(y))
        if ny == 0.0:
            break
        x = y / ny
        if res <= tol * max(1.0, abs(sigma)):
            return sigma - mu, x
    raise NumericError(f"power iteration did not converge within {max_iter} iterations")
