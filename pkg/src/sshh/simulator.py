"""Statevector engine: gate application, sampling, diagonal expectations.

A ``Statevector`` holds 2^n complex128 amplitudes with qubit q at bit q of
the index (little endian).  Gate application mutates the amplitude array in
place under single-writer semantics and returns the same object; read-only
operations (expectation, fidelity, sampling) never mutate.

Gate set (angles in radians):

* ``X(q)``            bit flip.
* ``PhaseZ(q, phi)``  multiplies bit-q=1 amplitudes by exp(-i phi).
* ``R(i, j, theta)``  exp(-i theta (X_i X_j + Y_i Y_j)/2): acts on the
  (|01>, |10>) subspace of bits (i, j) as [[cos, -i sin], [-i sin, cos]].
* ``G(i, j, theta)``  exp(-i theta (X_i Y_j - Y_i X_j)/2): acts on that
  subspace as [[cos, sin], [-sin, cos]].
* ``CP(i, j, theta)`` multiplies |11> amplitudes by exp(-i theta).

R, G and CP conserve the Hamming weight of every bit subset containing both
targets; X changes it by one.  Sampling uses the counter-based Philox
generator so shot batches are reproducible across platforms.  Reductions
(norm, overlaps, expectations) go through numpy's pairwise summation.

Memory: 24 qubits = 256 MiB of amplitudes; that is the supported maximum on
desk hardware (N <= 6 unit cells).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._bits import index_to_bitstring
from .errors import NumericError

NORM_TOL = 1e-9


@dataclass(frozen=True)
class Gate:
    kind: str  # "x" | "phasez" | "r" | "g" | "cp"
    qubits: tuple[int, ...]
    angle: float = 0.0

    @classmethod
    def x(cls, q: int) -> "Gate":
        return cls("x", (q,))

    @classmethod
    def phasez(cls, q: int, phi: float) -> "Gate":
        return cls("phasez", (q,), phi)

    @classmethod
    def r(cls, i: int, j: int, theta: float) -> "Gate":
        return cls("r", (i, j), theta)

    @classmethod
    def g(cls, i: int, j: int, theta: float) -> "Gate":
        return cls("g", (i, j), theta)

    @classmethod
    def cp(cls, i: int, j: int, theta: float) -> "Gate":
        return cls("cp", (i, j), theta)

    @property
    def is_two_qubit(self) -> bool:
        return len(self.qubits) == 2

    def __post_init__(self):
        if self.kind not in ("x", "phasez", "r", "g", "cp"):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        expected = 1 if self.kind in ("x", "phasez") else 2
        if len(self.qubits) != expected:
            raise ValueError(f"{self.kind} gate takes {expected} qubit(s)")
        if any(q < 0 for q in self.qubits):
            raise ValueError("negative qubit index")
        if expected == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError("two-qubit gate requires distinct qubits")


@dataclass
class Circuit:
    num_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        for gate in self.gates:
            self._check(gate)

    def _check(self, gate: Gate) -> None:
        if any(q >= self.num_qubits for q in gate.qubits):
            raise ValueError(f"gate {gate} exceeds {self.num_qubits} qubits")

    def append(self, gate: Gate) -> None:
        self._check(gate)
        self.gates.append(gate)

    def extend(self, other: "Circuit") -> None:
        if other.num_qubits != self.num_qubits:
            raise ValueError("circuit qubit counts differ")
        self.gates.extend(other.gates)

    def __len__(self) -> int:
        return len(self.gates)


@dataclass
class Statevector:
    num_qubits: int
    amplitudes: np.ndarray

    def copy(self) -> "Statevector":
        return Statevector(self.num_qubits, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class ShotBatch:
    shots: int
    counts: dict[str, int]
    seed: int
    num_qubits: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.shots:
            raise ValueError("shot counts do not sum to the shot total")


def zero_state(num_qubits: int) -> Statevector:
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return Statevector(num_qubits, amps)


def basis_state(num_qubits: int, index: int) -> Statevector:
    if not 0 <= index < (1 << num_qubits):
        raise ValueError(f"basis index {index} out of range")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[index] = 1.0
    return Statevector(num_qubits, amps)


def apply_gate(state: Statevector, gate: Gate) -> Statevector:
    """Apply one gate in place; returns the (mutated) input state."""
    if any(q >= state.num_qubits for q in gate.qubits):
        raise ValueError(f"gate {gate} exceeds {state.num_qubits} qubits")
    _kernels.configure_threads()
    amps = state.amplitudes
    if gate.kind == "x":
        _kernels.flipx(amps, gate.qubits[0])
    elif gate.kind == "phasez":
        _kernels.phase1(amps, gate.qubits[0], cmath.exp(-1j * gate.angle))
    elif gate.kind == "r":
        c = math.cos(gate.angle)
        s = -1j * math.sin(gate.angle)
        _kernels.mix01(amps, gate.qubits[0], gate.qubits[1], c + 0j, s, s, c + 0j)
    elif gate.kind == "g":
        c = math.cos(gate.angle)
        s = math.sin(gate.angle)
        _kernels.mix01(amps, gate.qubits[0], gate.qubits[1],
                       c + 0j, s + 0j, -s + 0j, c + 0j)
    else:  # cp
        _kernels.phase11(amps, gate.qubits[0], gate.qubits[1],
                         cmath.exp(-1j * gate.angle))
    return state


def run_circuit(state: Statevector, circuit: Circuit) -> Statevector:
    """Apply gates in list order; checks the final norm against drift."""
    if circuit.num_qubits != state.num_qubits:
        raise ValueError("circuit and state qubit counts differ")
    for gate in circuit.gates:
        apply_gate(state, gate)
    drift = abs(state.norm() - 1.0)
    if drift > NORM_TOL:
        raise NumericError(f"statevector norm drifted by {drift:.3e}")
    return state


def sample(state: Statevector, shots: int, seed: int) -> ShotBatch:
    """Draw ``shots`` computational-basis samples (Philox counter-based RNG)."""
    if shots < 1:
        raise ValueError("shot count must be >= 1")
    probs = np.abs(state.amplitudes) ** 2
    cdf = np.cumsum(probs)
    total = cdf[-1]
    if not math.isfinite(total) or total <= 0.0:
        raise NumericError("state has no probability mass")
    rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))
    draws = rng.random(shots) * total
    outcomes = np.searchsorted(cdf, draws, side="right")
    outcomes = np.minimum(outcomes, len(probs) - 1)
    values, counts = np.unique(outcomes, return_counts=True)
    count_map = {
        index_to_bitstring(int(v), state.num_qubits): int(c)
        for v, c in zip(values, counts)
    }
    return ShotBatch(shots, count_map, seed, state.num_qubits)


def expectation_diagonal(state: Statevector, weight) -> complex:
    """Sum_b |amp(b)|^2 * weight(b) for a diagonal observable.

    ``weight`` is either an array of length 2^n or a callable on the integer
    basis index (bit q of the index is qubit q).  The callable path visits
    only indices with nonzero probability and is meant for small registers.
    """
    probs = np.abs(state.amplitudes) ** 2
    if isinstance(weight, np.ndarray):
        if weight.shape != probs.shape:
            raise ValueError("weight array length mismatch")
        return complex(np.sum(probs * weight))
    support = np.flatnonzero(probs)
    return complex(sum(probs[b] * weight(int(b)) for b in support))


def fidelity(a: Statevector, b: Statevector) -> float:
    """|<a|b>|^2 (global-phase invariant)."""
    if a.num_qubits != b.num_qubits:
        raise ValueError("states have different qubit counts")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2)
