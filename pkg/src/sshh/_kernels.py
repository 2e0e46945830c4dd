"""Numba gate kernels for the statevector engine.

Each kernel walks the 2^(n-2) (or 2^(n-1)) base indices obtained by deleting
the target bits, reconstructing amplitude indices with bit-insertion masks.
The traversal order is fixed (ascending base index) and iterations touch
disjoint amplitude pairs, so parallel execution is race-free and results are
bitwise identical at any thread count.

The worker count is capped by the SSHH_THREADS environment variable
(checked once, at first kernel use).
"""

from __future__ import annotations

import os

import numba
import numpy as np
from numba import njit, prange

_threads_configured = False


def configure_threads() -> int:
    """Apply the SSHH_THREADS cap (if set) and return the active count."""
    global _threads_configured
    if not _threads_configured:
        raw = os.environ.get("SSHH_THREADS")
        if raw is not None:
            try:
                cap = int(raw)
            except ValueError as exc:
                raise ValueError(f"SSHH_THREADS must be a positive integer, got {raw!r}") from exc
            if cap < 1:
                raise ValueError(f"SSHH_THREADS must be >= 1, got {cap}")
            numba.set_num_threads(min(cap, numba.config.NUMBA_NUM_THREADS))
        _threads_configured = True
    return numba.get_num_threads()


@njit(parallel=True, cache=True)
def mix01(amps, qi, qj, m00, m01, m10, m11):
    """Apply [[m00, m01], [m10, m11]] on the (|01>, |10>) subspace of bits
    (qi, qj), where |01> means bit qi = 0, bit qj = 1."""
    if qi < qj:
        ml, mh = qi, qj
    else:
        ml, mh = qj, qi
    pl = 1 << ml
    ph = 1 << mh
    pi = 1 << qi
    pj = 1 << qj
    n_bases = amps.shape[0] >> 2
    for g in prange(n_bases):
        base = ((g >> ml) << (ml + 1)) | (g & (pl - 1))
        base = ((base >> mh) << (mh + 1)) | (base & (ph - 1))
        i01 = base | pj
        i10 = base | pi
        a01 = amps[i01]
        a10 = amps[i10]
        amps[i01] = m00 * a01 + m01 * a10
        amps[i10] = m10 * a01 + m11 * a10


@njit(parallel=True, cache=True)
def phase11(amps, qi, qj, phase):
    """Multiply amplitudes with bits qi = qj = 1 by ``phase``."""
    if qi < qj:
        ml, mh = qi, qj
    else:
        ml, mh = qj, qi
    pl = 1 << ml
    ph = 1 << mh
    n_bases = amps.shape[0] >> 2
    for g in prange(n_bases):
        base = ((g >> ml) << (ml + 1)) | (g & (pl - 1))
        base = ((base >> mh) << (mh + 1)) | (base & (ph - 1))
        amps[base | pl | ph] *= phase


@njit(parallel=True, cache=True)
def phase1(amps, q, phase):
    """Multiply amplitudes with bit q = 1 by ``phase``."""
    p = 1 << q
    n_bases = amps.shape[0] >> 1
    for g in prange(n_bases):
        idx = ((g >> q) << (q + 1)) | (g & (p - 1))
        amps[idx | p] *= phase


@njit(parallel=True, cache=True)
def flipx(amps, q):
    """Swap amplitude pairs differing in bit q (Pauli X)."""
    p = 1 << q
    n_bases = amps.shape[0] >> 1
    for g in prange(n_bases):
        idx = ((g >> q) << (q + 1)) | (g & (p - 1))
        hi = idx | p
        tmp = amps[idx]
        amps[idx] = amps[hi]
        amps[hi] = tmp
