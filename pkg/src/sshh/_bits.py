"""Bit-level helpers for little-endian basis indices.

Convention used everywhere in this package: qubit q is bit q of the basis
index, |0> is an empty fermionic mode and |1> an occupied one.  A rendered
bitstring puts qubit 0 first, i.e. string position k holds bit k.
"""

from __future__ import annotations

import numpy as np


def popcount(values: np.ndarray | int) -> np.ndarray | int:
    if isinstance(values, (int, np.integer)):
        return int(values).bit_count()
    return np.bitwise_count(np.asarray(values, dtype=np.uint64)).astype(np.int64)


def index_to_bitstring(index: int, num_qubits: int) -> str:
    return "".join(str((index >> q) & 1) for q in range(num_qubits))


def bitstring_to_index(bits: str) -> int:
    if any(ch not in "01" for ch in bits):
        raise ValueError(f"not a bitstring: {bits!r}")
    return int(bits[::-1], 2) if bits else 0


def block_masks(n_cells: int) -> tuple[int, int]:
    """(spin-up, spin-down) bit masks for a 4N-qubit register."""
    up = (1 << (2 * n_cells)) - 1
    return up, up << (2 * n_cells)
