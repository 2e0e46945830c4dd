"""Single-particle SSH hopping matrix, spectrum, and regime checks.

The 2N x 2N matrix is ordered site-major (A1, B1, A2, B2, ...), which is
also the within-block qubit order, and carries the same sign convention as
the Pauli-form Hamiltonian: hopping amplitudes enter as -v and -w, so for
real positive v the dimer ground orbital is the bonding combination
(|A> + |B>)/sqrt(2) at energy -|v|.

Because the many-body H_0 is quadratic in the fermions, its exact ground
state within any (n_up, n_down) sector is the Slater determinant of this
matrix's lowest orbitals; no boundary twist enters here.  (The sector
parity appears only on the circuit side, where the wrap-around bond is
represented by a parity-replaced two-qubit operator.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._linalg import jacobi_eigh
from .errors import NumericError
from .model import OBC, PBC, SSHHParams

FERMI_DEGENERACY_TOL = 1e-9


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in ascending order; eigenvector k is column k."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def build_hopping_matrix(params: SSHHParams) -> np.ndarray:
    """Single-particle Hamiltonian of one spin sector (both are identical)."""
    N = params.N
    mat = np.zeros((2 * N, 2 * N), dtype=np.complex128)
    for j in range(N):
        a, b = 2 * j, 2 * j + 1
        mat[b, a] = -params.v
        mat[a, b] = -np.conj(params.v)
    for j in range(N - 1):
        b, a_next = 2 * j + 1, 2 * j + 2
        mat[b, a_next] = -params.w
        mat[a_next, b] = -np.conj(params.w)
    if params.boundary == PBC:
        mat[2 * N - 1, 0] = -params.w
        mat[0, 2 * N - 1] = -np.conj(params.w)
    return mat


def eigensolve(matrix: np.ndarray) -> Spectrum:
    """Diagonalize a Hermitian matrix with the cyclic Jacobi solver."""
    eigenvalues, eigenvectors = jacobi_eigh(matrix)
    residual = np.max(np.abs(matrix @ eigenvectors - eigenvectors * eigenvalues))
    if residual > 1e-10 * max(1.0, float(np.max(np.abs(eigenvalues), initial=0.0))):
        raise NumericError(f"eigensolve residual {residual:.3e} exceeds tolerance")
    return Spectrum(eigenvalues, eigenvectors)


def band_gap(params: SSHHParams) -> float:
    """2 * min{|v+w|, |v-w|}, the bulk single-particle gap."""
    return 2.0 * min(abs(params.v + params.w), abs(params.v - params.w))


def winding_class(params: SSHHParams) -> str:
    """'trivial' (|v|>|w|), 'topological' (|v|<|w|), or 'critical'."""
    av, aw = abs(params.v), abs(params.w)
    if abs(av - aw) <= 1e-12:
        return "critical"
    return "trivial" if av > aw else "topological"


def check_weak_interaction(params: SSHHParams) -> bool:
    """Sufficient condition for the fixed-sector evolution to track the true
    ground state: max{U_A, U_B, |dU|} < min{|v+w|, |v-w|}."""
    lhs = max(params.U_A, params.U_B, abs(params.delta_U))
    return lhs < min(abs(params.v + params.w), abs(params.v - params.w))


def suggest_min_T(params: SSHHParams) -> float:
    """Heuristic lower scale for the evolution time, ||H_1||_est / gap^2 with
    ||H_1||_est = N * max(U_A, U_B) and hbar = 1.  An indicator, not a bound."""
    gap = band_gap(params)
    if gap <= 0.0:
        raise NumericError("gap closes; adiabatic bound singular")
    return params.N * max(params.U_A, params.U_B) / gap ** 2
