"""Numeric kernels for brute-force homomorphism counting.

Two interchangeable paths: a numba ``@njit`` loop and a vectorised numpy
fallback. Setting ``HANDLECALC_DISABLE_NUMBA=1`` (or running without numba
installed) selects the fallback.
"""
from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("HANDLECALC_DISABLE_NUMBA", "") not in ("1", "true", "yes")

# assignments evaluated per numpy batch
CHUNK = 1 << 16


def pack_relators(relators, ngens: int):
    """Flatten relators into (letters, offsets) int64 arrays.

    ``letters`` holds ``2*g`` for generator ``g`` and ``2*g + 1`` for its inverse.
    """
    flat = []
    offsets = [0]
    for r in relators:
        for c in r:
            g = abs(c) - 1
            if g >= ngens:
                raise ValueError("relator letter outside the generator range")
            flat.append(2 * g + (c < 0))
        offsets.append(len(flat))
    return np.asarray(flat, dtype=np.int64), np.asarray(offsets, dtype=np.int64)


def _count_numpy(table, inverse, identity, letters, offsets, ngens):
    order = table.shape[0]
    total = order ** ngens
    nrel = len(offsets) - 1
    count = 0
    radix = order ** np.arange(ngens - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        assign = (idx[:, None] // radix[None, :]) % order if ngens else np.zeros((len(idx), 0), np.int64)
        ok = np.ones(len(idx), dtype=bool)
        for r in range(nrel):
            state = np.full(len(idx), identity, dtype=np.int64)
            for p in range(offsets[r], offsets[r + 1]):
                code = letters[p]
                elem = assign[:, code >> 1]
                if code & 1:
                    elem = inverse[elem]
                state = table[state, elem]
            ok &= state == identity
        count += int(ok.sum())
    return count


def _count_python_loop(table, inverse, identity, letters, offsets, ngens):
    # body shared with the numba path; odometer over all assignments
    order = table.shape[0]
    nrel = offsets.shape[0] - 1
    assign = np.zeros(ngens, dtype=np.int64)
    count = 0
    while True:
        good = True
        for r in range(nrel):
            state = identity
            for p in range(offsets[r], offsets[r + 1]):
                code = letters[p]
                elem = assign[code >> 1]
                if code & 1:
                    elem = inverse[elem]
                state = table[state, elem]
            if state != identity:
                good = False
                break
        if good:
            count += 1
        pos = ngens - 1
        while pos >= 0:
            assign[pos] += 1
            if assign[pos] < order:
                break
            assign[pos] = 0
            pos -= 1
        if pos < 0:
            return count


if HAVE_NUMBA:
    _count_numba = njit(cache=True, nogil=True)(_count_python_loop)
else:  # pragma: no cover
    _count_numba = None


def count_assignments(table, inverse, identity, letters, offsets, ngens, use_numba=None):
    """Number of generator assignments into the group killing every relator."""
    if use_numba is None:
        use_numba = USE_NUMBA
    table = np.ascontiguousarray(table, dtype=np.int64)
    inverse = np.ascontiguousarray(inverse, dtype=np.int64)
    if use_numba:
        if not HAVE_NUMBA:
            raise RuntimeError("numba is not available")
        return int(_count_numba(table, inverse, np.int64(identity), letters, offsets, np.int64(ngens)))
    return _count_numpy(table, inverse, int(identity), letters, offsets, int(ngens))
