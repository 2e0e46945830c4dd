"""Slater-determinant preparation: Givens-rotation circuits and a direct
statevector oracle.

A ``SlaterSpec`` holds one orthonormal-row matrix per spin sector; the state
it denotes is

    |Psi> = prod_rows ( sum_m Q[r, m] c^dag_m ) |vacuum>,

rows applied left to right (row 0 outermost).  Rows of the occupied-orbital
matrix are eigenvector transposes of the single-particle matrix, so no
conjugation is applied anywhere.

Circuit construction works on T = Q^dag (modes x orbitals).  A free column
gauge (classical preprocessing, no gates) makes the bottom k x k block of T
upper triangular; a Reck-style sweep then eliminates the remaining
below-top-block entries with rotations on adjacent mode pairs, exactly
k(D - k) of them, never refilling a cleared entry.  Reversed and
transposed, those rotations become the G gates of the preparation circuit;
complex entries contribute a PhaseZ conjugation around the G gate.  Gauge
choice: each elimination keeps the pivot's complex phase (rotations are
unit-determinant with a real diagonal), and the residual per-orbital phases
are absorbed into the global phase.

The spin blocks act on disjoint qubit ranges, so their subcircuits can run
in parallel on hardware; here they are emitted up-block first.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from ._bits import popcount
from .errors import FermiDegeneracyWarning, NumericError
from .model import PBC, SSHHParams, SpinFilling
from .simulator import Circuit, Gate, Statevector, run_circuit, zero_state
from .singleparticle import (FERMI_DEGENERACY_TOL, Spectrum,
                             build_hopping_matrix, eigensolve)

ORTHONORMALITY_TOL = 1e-10
PRUNE_TOL = 1e-14


@dataclass(frozen=True)
class SlaterSpec:
    """Occupied-orbital matrices, one per spin sector: Q_up is n_up x D and
    Q_down is n_down x D with D site modes per sector."""

    Q_up: np.ndarray
    Q_down: np.ndarray

    def __post_init__(self):
        for name, q in (("Q_up", self.Q_up), ("Q_down", self.Q_down)):
            if q.ndim != 2:
                raise ValueError(f"{name} must be a 2-d matrix")
            _check_orthonormal_rows(q, name)
        if self.Q_up.shape[1] != self.Q_down.shape[1]:
            raise ValueError("spin sectors must share the mode count")

    @property
    def num_modes(self) -> int:
        return self.Q_up.shape[1]

    @property
    def num_qubits(self) -> int:
        return 2 * self.num_modes

    @property
    def filling(self) -> SpinFilling:
        return SpinFilling(self.Q_up.shape[0], self.Q_down.shape[0])


@dataclass(frozen=True)
class PrepCircuit:
    """Preparation circuit plus the pre-pruning rotation accounting."""

    circuit: Circuit
    g_count_up: int
    g_count_down: int
    x_count: int


def _check_orthonormal_rows(q: np.ndarray, name: str) -> None:
    k = q.shape[0]
    if k == 0:
        return
    gram = q @ q.conj().T
    dev = float(np.max(np.abs(gram - np.eye(k))))
    if dev > ORTHONORMALITY_TOL:
        raise ValueError(f"{name} rows are not orthonormal (deviation {dev:.3e})")


def occupied_orbitals(spectrum: Spectrum, n_s: int) -> np.ndarray:
    """Rows = the n_s lowest-eigenvalue eigenvectors (transposed, unconjugated).

    Warns when the highest occupied and lowest empty levels are degenerate;
    the returned determinant is then gauge-ambiguous.
    """
    dim = spectrum.eigenvalues.shape[0]
    if not 0 <= n_s <= dim:
        raise ValueError(f"occupation {n_s} outside 0..{dim}")
    if 0 < n_s < dim:
        gap = spectrum.eigenvalues[n_s] - spectrum.eigenvalues[n_s - 1]
        if gap < FERMI_DEGENERACY_TOL:
            warnings.warn(
                f"Fermi-level degeneracy: levels {n_s - 1} and {n_s} split by {gap:.3e}",
                FermiDegeneracyWarning,
            )
    return spectrum.eigenvectors[:, :n_s].T.copy()


def _eliminate_block(q_block: np.ndarray) -> list[tuple[int, complex, complex]]:
    """Reduce T = Q^dag to [[diag], [0]] and return the row-rotation list.

    Entries are (i, c, s): the rotation on mode rows (i-1, i) with matrix
    [[c, s], [-conj(s), c]], c real, recorded in elimination order.  Exactly
    k(D - k) entries (zero-angle ones included).
    """
    k, d = q_block.shape
    t = q_block.conj().T.copy()
    if k == 0 or k == d:
        return []

    # Free column gauge: upper-triangularize the bottom k x k block.
    for row in range(d - 1, d - k, -1):
        r_b = row - (d - k)
        for j in range(r_b):
            f, g = t[row, j], t[row, j + 1]
            if abs(f) == 0.0:
                continue
            r = math.sqrt(abs(f) ** 2 + abs(g) ** 2)
            if abs(g) == 0.0:
                c, s = 0.0, f.conjugate() / abs(f)
            else:
                c = abs(g) / r
                s = (abs(g) / r) * f.conjugate() / g.conjugate()
            # columns: col_j' = c col_j - conj(s) col_{j+1}; col_{j+1}' = s col_j + c col_{j+1}
            col_j = t[:, j].copy()
            col_j1 = t[:, j + 1].copy()
            t[:, j] = c * col_j - np.conj(s) * col_j1
            t[:, j + 1] = s * col_j + c * col_j1

    rotations: list[tuple[int, complex, complex]] = []
    for j in range(k):
        for i in range(d - k + j, j, -1):
            f, g = t[i - 1, j], t[i, j]
            if abs(g) < 1e-300:
                c, s = 1.0, 0.0 + 0.0j
            elif abs(f) < 1e-300:
                c, s = 0.0, g.conjugate() / abs(g)
            else:
                r = math.sqrt(abs(f) ** 2 + abs(g) ** 2)
                c = abs(f) / r
                s = (abs(f) / r) * (g.conjugate() / f.conjugate())
            rotations.append((i, complex(c), complex(s)))
            row_a = t[i - 1, :].copy()
            row_b = t[i, :].copy()
            t[i - 1, :] = c * row_a + s * row_b
            t[i, :] = -np.conj(s) * row_a + c * row_b

    residual = float(np.max(np.abs(t[k:, :]))) if k < d else 0.0
    if residual > 1e-9:
        raise NumericError(f"Givens elimination left residual {residual:.3e}")
    return rotations


def _emit_block(circuit: Circuit, rotations, offset: int) -> None:
    """Append the reversed, transposed elimination rotations as gates.

    A rotation with complex s = sigma e^{i phi} becomes PhaseZ(hi, phi),
    G(lo, hi, atan2(sigma, c)), PhaseZ(hi, -phi); phi is folded into
    (-pi/2, pi/2] with a signed sigma so real inputs need no phase gates.
    """
    for i, c, s in reversed(rotations):
        lo, hi = offset + i - 1, offset + i
        sigma = abs(s)
        phi = cmath.phase(s) if sigma > 0.0 else 0.0
        if phi > math.pi / 2:
            phi -= math.pi
            sigma = -sigma
        elif phi <= -math.pi / 2:
            phi += math.pi
            sigma = -sigma
        theta = math.atan2(sigma, c.real)
        if abs(theta) < PRUNE_TOL:
            continue
        if abs(phi) >= PRUNE_TOL:
            circuit.append(Gate.phasez(hi, phi))
        circuit.append(Gate.g(lo, hi, theta))
        if abs(phi) >= PRUNE_TOL:
            circuit.append(Gate.phasez(hi, -phi))


def givens_decompose(spec: SlaterSpec) -> PrepCircuit:
    """Preparation circuit: occupation X gates, then the Givens network.

    Pre-pruning G counts are exactly n_s(D - n_s) per sector; zero-angle
    rotations are pruned from the emitted gate list afterwards.
    """
    d = spec.num_modes
    circuit = Circuit(spec.num_qubits)
    filling = spec.filling
    for q in range(filling.n_up):
        circuit.append(Gate.x(q))
    for q in range(filling.n_down):
        circuit.append(Gate.x(d + q))

    rot_up = _eliminate_block(spec.Q_up)
    rot_down = _eliminate_block(spec.Q_down)
    _emit_block(circuit, rot_up, 0)
    _emit_block(circuit, rot_down, d)
    return PrepCircuit(
        circuit=circuit,
        g_count_up=len(rot_up),
        g_count_down=len(rot_down),
        x_count=filling.total,
    )


def _apply_creation(vec: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Apply sum_m coeffs[m] c^dag_m with Jordan-Wigner signs to a block vector."""
    idx = np.arange(vec.shape[0])
    out = np.zeros_like(vec)
    for m, cm in enumerate(coeffs):
        if cm == 0:
            continue
        src = idx[((idx >> m) & 1) == 0]
        below = popcount(src & ((1 << m) - 1))
        signs = 1.0 - 2.0 * (np.asarray(below) & 1)
        out[src | (1 << m)] += cm * signs * vec[src]
    return out


def _block_slater(q_block: np.ndarray) -> np.ndarray:
    d = q_block.shape[1]
    vec = np.zeros(1 << d, dtype=np.complex128)
    vec[0] = 1.0
    for r in range(q_block.shape[0] - 1, -1, -1):  # row 0 is the outermost operator
        vec = _apply_creation(vec, q_block[r])
    return vec


def direct_slater(spec: SlaterSpec) -> Statevector:
    """Build the Slater statevector by applying JW-signed creation operators.

    Validation oracle for the circuit path; cost 2^(2N) per spin block.
    """
    up = _block_slater(spec.Q_up)
    down = _block_slater(spec.Q_down)
    amps = np.kron(down, up)  # index = up_bits + down_bits << 2N
    norm = float(np.linalg.norm(amps))
    if norm < 1e-6:
        raise ValueError("linearly dependent orbital rows: state has zero norm")
    if abs(norm - 1.0) > 1e-10:
        amps = amps / norm
    return Statevector(spec.num_qubits, amps)


def ground_state_spec(params: SSHHParams, filling: SpinFilling) -> tuple[SlaterSpec, float]:
    """Occupied orbitals of the noninteracting model for the given sector.
    Returns (spec, E0) with E0 the summed occupied eigenvalues."""
    filling.validate_for(params.N)
    spectrum = eigensolve(build_hopping_matrix(params))
    energy = 0.0
    blocks = []
    for n_s in (filling.n_up, filling.n_down):
        blocks.append(occupied_orbitals(spectrum, n_s))
        energy += float(np.sum(spectrum.eigenvalues[:n_s]))
    return SlaterSpec(Q_up=blocks[0], Q_down=blocks[1]), energy


def prepare_ground_state(params: SSHHParams, filling: SpinFilling) -> tuple[Statevector, float]:
    """Run the Givens preparation circuit on |0...0>; returns (state, E0)."""
    spec, energy = ground_state_spec(params, filling)
    prep = givens_decompose(spec)
    state = run_circuit(zero_state(spec.num_qubits), prep.circuit)
    return state, energy
