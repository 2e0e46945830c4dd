"""Shared brute-force oracles for the test suite.

Everything here goes through dense numpy linear algebra (eigh-based matrix
exponentials, explicit Pauli kron products), independent of the package's
own kernels and solvers.
"""

from __future__ import annotations

import numpy as np
import pytest

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_on(num_qubits: int, ops: dict[int, str]) -> np.ndarray:
    """Dense kron product with the package's little-endian convention:
    qubit q is bit q of the index, so qubit 0 is the innermost kron factor."""
    out = np.eye(1, dtype=complex)
    for q in range(num_qubits - 1, -1, -1):
        out = np.kron(out, _PAULI[ops.get(q, "I")])
    return out


def expm_hermitian_times(scale: complex, herm: np.ndarray) -> np.ndarray:
    """exp(scale * H) for Hermitian H via eigendecomposition (LAPACK path,
    independent of the package's Jacobi solver)."""
    vals, vecs = np.linalg.eigh(herm)
    return (vecs * np.exp(scale * vals)) @ vecs.conj().T


def dense_gate_unitary(gate, num_qubits: int) -> np.ndarray:
    """Brute-force unitary of one package gate from its Pauli generator."""
    kind, qubits, angle = gate.kind, gate.qubits, gate.angle
    if kind == "x":
        return pauli_on(num_qubits, {qubits[0]: "X"})
    if kind == "phasez":
        n_op = (pauli_on(num_qubits, {}) - pauli_on(num_qubits, {qubits[0]: "Z"})) / 2
        return expm_hermitian_times(-1j * angle, n_op)
    i, j = qubits
    if kind == "r":
        gen = (pauli_on(num_qubits, {i: "X", j: "X"})
               + pauli_on(num_qubits, {i: "Y", j: "Y"})) / 2
    elif kind == "g":
        gen = (pauli_on(num_qubits, {i: "X", j: "Y"})
               - pauli_on(num_qubits, {i: "Y", j: "X"})) / 2
    elif kind == "cp":
        gen = ((pauli_on(num_qubits, {}) - pauli_on(num_qubits, {i: "Z"}))
               @ (pauli_on(num_qubits, {}) - pauli_on(num_qubits, {j: "Z"}))) / 4
    else:
        raise ValueError(kind)
    return expm_hermitian_times(-1j * angle, gen)


def dense_circuit_unitary(circuit, num_qubits: int) -> np.ndarray:
    u = np.eye(1 << num_qubits, dtype=complex)
    for gate in circuit.gates:
        u = dense_gate_unitary(gate, num_qubits) @ u
    return u


def random_state(rng: np.random.Generator, num_qubits: int):
    from sshh.simulator import Statevector

    amps = rng.normal(size=1 << num_qubits) + 1j * rng.normal(size=1 << num_qubits)
    amps /= np.linalg.norm(amps)
    return Statevector(num_qubits, amps.astype(np.complex128))


def random_orthonormal_rows(rng: np.random.Generator, k: int, d: int,
                            real: bool = False) -> np.ndarray:
    mat = rng.normal(size=(d, d))
    if not real:
        mat = mat + 1j * rng.normal(size=(d, d))
    q, _ = np.linalg.qr(mat)
    return q[:, :k].T.copy()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240811)
