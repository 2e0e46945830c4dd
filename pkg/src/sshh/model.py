"""SSH-Hubbard model parameters and the Jordan-Wigner qubit Hamiltonian.

Conventions (used consistently by every module in this package):

* A lattice of N unit cells, each with sublattice sites A and B, per spin.
  Fermionic modes map to qubits as

      q(A, j, up)   = 2j - 2        q(A, j, down) = 2N + 2j - 2
      q(B, j, up)   = 2j - 1        q(B, j, down) = 2N + 2j - 1

  for 1-based cell index j, so the register splits into a spin-up block
  (qubits 0 .. 2N-1) followed by a spin-down block (2N .. 4N-1).  Within a
  block the mode order is A1, B1, A2, B2, ...; Jordan-Wigner strings follow
  this global qubit order.

* Qubit q is bit q of the basis index (little endian); |1> = occupied.

* The hopping part of the Hamiltonian is stored in the Pauli form with an
  overall -1/2 prefactor on Re/Im hopping pairs,

      -(1/2) [Re(v) (XX + YY) + Im(v) (XY - YX)]   per intracell bond,

  which corresponds to fermionic hopping amplitudes -v, -w.  All other
  modules (single-particle matrix, exact-diagonalization oracle, Trotter
  angles) share this sign so that state preparation, circuit evolution and
  the oracle agree without renormalization.

* Under periodic boundaries the wrap-around bond carries the full-sector
  Z string.  Within a fixed (n_up, n_down) sector the string acts as the
  c-number (-1)^{n_s}; commuting the string's end-point Z factors through
  the bond's X/Y pair contributes one extra minus sign, so the replaced
  two-qubit bond coefficient is +(1/2)(-1)^{n_s} (opposite in sign to the
  bulk bonds when n_s is even).  The exact-diagonalization oracle validates
  this entrywise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

Sublattice = str  # "A" | "B"
Spin = str  # "up" | "down"

PBC = "PBC"
OBC = "OBC"


@dataclass(frozen=True)
class SSHHParams:
    """Model parameters: N cells, hoppings v (intracell) / w (intercell),
    on-site repulsions U_A / U_B, and the boundary condition."""

    N: int
    v: complex
    w: complex
    U_A: float = 0.0
    U_B: float = 0.0
    boundary: str = PBC

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < 2:
            raise ValueError(f"N must be an integer >= 2, got {self.N}")
        if self.U_A < 0 or self.U_B < 0:
            raise ValueError("U_A and U_B must be non-negative")
        if self.boundary not in (PBC, OBC):
            raise ValueError(f"boundary must be 'PBC' or 'OBC', got {self.boundary!r}")

    @property
    def delta_U(self) -> float:
        return self.U_B - self.U_A

    @property
    def num_qubits(self) -> int:
        return 4 * self.N


@dataclass(frozen=True)
class SpinFilling:
    """Electron counts per spin sector; conserved throughout the evolution."""

    n_up: int
    n_down: int

    @property
    def total(self) -> int:
        return self.n_up + self.n_down

    def validate_for(self, n_cells: int) -> None:
        for n_s in (self.n_up, self.n_down):
            if not 0 <= n_s <= 2 * n_cells:
                raise ValueError(f"spin filling {n_s} outside [0, {2 * n_cells}]")

    @classmethod
    def half(cls, n_cells: int) -> "SpinFilling":
        return cls(n_cells, n_cells)

    @classmethod
    def half_plus_two(cls, n_cells: int) -> "SpinFilling":
        return cls(n_cells + 1, n_cells + 1)


@dataclass(frozen=True)
class PauliTerm:
    """coeff times a product of single-qubit Paulis on distinct qubits.

    ``factors`` is a tuple of (qubit, axis) pairs with strictly ascending
    qubit indices; an empty tuple is an identity (constant) term.
    """

    coeff: complex
    factors: tuple[tuple[int, str], ...] = field(default=())

    def __post_init__(self):
        last = -1
        for q, axis in self.factors:
            if q <= last:
                raise ValueError("factor qubits must be strictly ascending")
            if axis not in ("X", "Y", "Z"):
                raise ValueError(f"bad Pauli axis {axis!r}")
            last = q


def map_mode(sublattice: Sublattice, j: int, spin: Spin, N: int) -> int:
    """Qubit index of mode (sublattice, cell j, spin) for 1-based j."""
    if not 1 <= j <= N:
        raise ValueError(f"cell index {j} outside 1..{N}")
    if sublattice not in ("A", "B"):
        raise ValueError(f"bad sublattice {sublattice!r}")
    if spin not in ("up", "down"):
        raise ValueError(f"bad spin {spin!r}")
    q = 2 * j - 2 + (1 if sublattice == "B" else 0)
    if spin == "down":
        q += 2 * N
    return q


def sector_parity(n_s: int) -> int:
    """(-1)^{n_s}: eigenvalue of the spin-sector parity string at filling n_s."""
    if n_s < 0:
        raise ValueError("n_s must be non-negative")
    return -1 if n_s % 2 else 1


def _hopping_pair_terms(lo: int, hi: int, re_c: float, im_c: float) -> list[PauliTerm]:
    """Terms re_c*(XX + YY) + im_c*(XY - YX) on qubits (lo, hi), lo < hi."""
    out = []
    if re_c != 0.0:
        out.append(PauliTerm(re_c, ((lo, "X"), (hi, "X"))))
        out.append(PauliTerm(re_c, ((lo, "Y"), (hi, "Y"))))
    if im_c != 0.0:
        out.append(PauliTerm(im_c, ((lo, "X"), (hi, "Y"))))
        out.append(PauliTerm(-im_c, ((lo, "Y"), (hi, "X"))))
    return out


def _string_factors(lo: int, hi: int, lo_axis: str, hi_axis: str) -> tuple:
    mid = tuple((q, "Z") for q in range(lo + 1, hi))
    return ((lo, lo_axis),) + mid + ((hi, hi_axis),)


def build_hamiltonian_terms(
    params: SSHHParams,
    lam: float,
    filling: SpinFilling,
    pbc_strings: str = "literal",
) -> list[PauliTerm]:
    """Pauli terms of H_0 + lam * H_1.

    ``pbc_strings`` selects the periodic-boundary representation:
    "literal" keeps the full Jordan-Wigner Z string on the wrap-around bond
    (for unrestricted-space cross-checks); "replaced" substitutes the
    sector parity (-1)^{n_s}, valid only within the fixed-filling sector.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"interpolation fraction {lam} outside [0, 1]")
    if pbc_strings not in ("literal", "replaced"):
        raise ValueError(f"pbc_strings must be 'literal' or 'replaced', got {pbc_strings!r}")
    filling.validate_for(params.N)

    N = params.N
    re_v, im_v = params.v.real, params.v.imag
    re_w, im_w = params.w.real, params.w.imag
    terms: list[PauliTerm] = []

    for offset, n_s in ((0, filling.n_up), (2 * N, filling.n_down)):
        # Intracell bonds: v multiplies c^dag_B c_A with B the higher qubit.
        for j in range(N):
            lo, hi = offset + 2 * j, offset + 2 * j + 1
            terms += _hopping_pair_terms(lo, hi, -re_v / 2.0, -im_v / 2.0)
        # Intercell bonds: w multiplies c^dag_B c_A(j+1) with B the lower qubit,
        # which conjugates the XY - YX orientation relative to intracell.
        for j in range(N - 1):
            lo, hi = offset + 2 * j + 1, offset + 2 * j + 2
            terms += _hopping_pair_terms(lo, hi, -re_w / 2.0, im_w / 2.0)
        if params.boundary == PBC:
            lo, hi = offset, offset + 2 * N - 1
            if pbc_strings == "literal":
                for lo_ax, hi_ax, c in (
                    ("X", "X", -re_w / 2.0),
                    ("Y", "Y", -re_w / 2.0),
                    ("X", "Y", -im_w / 2.0),
                    ("Y", "X", im_w / 2.0),
                ):
                    if c != 0.0:
                        terms.append(PauliTerm(c, _string_factors(lo, hi, lo_ax, hi_ax)))
            else:
                par = sector_parity(n_s)
                terms += _hopping_pair_terms(lo, hi, par * re_w / 2.0, par * im_w / 2.0)

    # Hubbard part: lam * U/4 * (I - Z_i)(I - Z_j) per site, up/down qubit pair.
    for j in range(N):
        for up_q, u in ((2 * j, params.U_A), (2 * j + 1, params.U_B)):
            c = lam * u / 4.0
            if c == 0.0:
                continue
            dn_q = up_q + 2 * N
            terms.append(PauliTerm(c))
            terms.append(PauliTerm(-c, ((up_q, "Z"),)))
            terms.append(PauliTerm(-c, ((dn_q, "Z"),)))
            terms.append(PauliTerm(c, ((up_q, "Z"), (dn_q, "Z"))))

    return terms


def dense_matrix(terms: list[PauliTerm], num_qubits: int) -> np.ndarray:
    """Expand a term list into a dense 2^n x 2^n matrix (small n only)."""
    dim = 1 << num_qubits
    mat = np.zeros((dim, dim), dtype=np.complex128)
    idx = np.arange(dim)
    for term in terms:
        flip = 0
        phase = np.full(dim, term.coeff, dtype=np.complex128)
        for q, axis in term.factors:
            if q >= num_qubits:
                raise ValueError(f"term touches qubit {q} >= {num_qubits}")
            bit = (idx >> q) & 1
            if axis == "X":
                flip ^= 1 << q
            elif axis == "Y":
                flip ^= 1 << q
                phase *= 1j * (1.0 - 2.0 * bit)
            else:
                phase *= 1.0 - 2.0 * bit
        mat[idx ^ flip, idx] += phase
    return mat


def hopping_pairs(params: SSHHParams) -> list[tuple[int, int, complex]]:
    """Fermionic hopping list [(src_mode, dst_mode, amp)] meaning
    amp * c^dag_dst c_src, matching the Pauli-form sign convention
    (amplitudes -v, -w); Hermitian partners included explicitly."""
    N = params.N
    pairs: list[tuple[int, int, complex]] = []
    for offset in (0, 2 * N):
        for j in range(N):
            a, b = offset + 2 * j, offset + 2 * j + 1
            pairs.append((a, b, -params.v))
            pairs.append((b, a, -np.conj(params.v)))
        for j in range(N - 1):
            b, a_next = offset + 2 * j + 1, offset + 2 * j + 2
            pairs.append((a_next, b, -params.w))
            pairs.append((b, a_next, -np.conj(params.w)))
        if params.boundary == PBC:
            a1, bN = offset, offset + 2 * N - 1
            pairs.append((a1, bN, -params.w))
            pairs.append((bN, a1, -np.conj(params.w)))
    return pairs
