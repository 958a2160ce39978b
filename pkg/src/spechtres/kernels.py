"""Hot linear-algebra kernels.

Each kernel has a numba implementation and a pure-numpy one with identical
results.  ``SPECHTRES_BACKEND=numpy`` forces the numpy path; the default is
numba when it imports.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

PRIMES = (2147483647, 2147483629)


def backend() -> str:
    choice = os.environ.get("SPECHTRES_BACKEND", "").strip().lower()
    if choice == "numpy" or numba is None:
        return "numpy"
    if choice not in ("", "numba"):
        raise ValueError(f"unknown SPECHTRES_BACKEND {choice!r}")
    return "numba"


# ---------------------------------------------------------------------------
# modular row echelon rank


def _rank_mod_p_numpy(a: np.ndarray, p: int) -> int:
    a = a.copy()
    nrows, ncols = a.shape
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        col = a[rank:, c]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        below = rank + 1 + np.flatnonzero(a[rank + 1:, c])
        if below.size:
            support = c + np.flatnonzero(a[rank, c:])
            factors = a[below, c]
            block = a[np.ix_(below, support)]
            block -= (factors[:, None] * a[rank, support][None, :]) % p
            block %= p
            a[np.ix_(below, support)] = block
        rank += 1
    return rank


if numba is not None:

    @numba.njit(cache=True, nogil=True)
    def _inv_mod(x, p):
        # extended Euclid; x is nonzero mod p
        t, new_t = 0, 1
        r, new_r = p, x
        while new_r != 0:
            q = r // new_r
            t, new_t = new_t, t - q * new_t
            r, new_r = new_r, r - q * new_r
        if t < 0:
            t += p
        return t

    @numba.njit(cache=True, nogil=True)
    def _rank_mod_p_numba(a, p):
        nrows, ncols = a.shape
        support = np.empty(ncols, dtype=np.int64)
        rank = 0
        for c in range(ncols):
            if rank == nrows:
                break
            piv = -1
            for r in range(rank, nrows):
                if a[r, c] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for k in range(c, ncols):
                    tmp = a[rank, k]
                    a[rank, k] = a[piv, k]
                    a[piv, k] = tmp
            inv = _inv_mod(a[rank, c], p)
            nsup = 0
            for k in range(c, ncols):
                v = a[rank, k]
                if v != 0:
                    a[rank, k] = (v * inv) % p
                    support[nsup] = k
                    nsup += 1
            for r in range(rank + 1, nrows):
                f = a[r, c]
                if f == 0:
                    continue
                for s in range(nsup):
                    k = support[s]
                    a[r, k] = (a[r, k] - f * a[rank, k]) % p
            rank += 1
        return rank


def rank_mod_p(matrix: np.ndarray, p: int = PRIMES[0]) -> int:
    """Rank of an integer matrix over ``GF(p)``; a lower bound for its rank over QQ."""
    m = np.asarray(matrix)
    if m.size == 0:
        return 0
    if m.dtype == object:
        m = np.vectorize(lambda v: int(v) % p, otypes=[np.int64])(m)
    else:
        m = np.mod(m.astype(np.int64), p)
    if m.shape[0] < m.shape[1]:
        m = m.T
    m = np.ascontiguousarray(m)
    if backend() == "numba":
        return int(_rank_mod_p_numba(m, np.int64(p)))
    return _rank_mod_p_numpy(m, p)


def rank_lower_bound(matrix: np.ndarray, primes=PRIMES) -> int:
    """Largest modular rank over ``primes``; never exceeds the rational rank."""
    best = 0
    for p in primes:
        best = max(best, rank_mod_p(matrix, p))
        if best == min(np.shape(matrix)):
            break
    return best


# ---------------------------------------------------------------------------
# exact fraction-free elimination


def bareiss_rank(matrix) -> int:
    """Exact rank over QQ of an integer matrix by fraction-free elimination.

    Pure Python integers, so no overflow; intended for small matrices and as
    a reference for the modular kernels.
    """
    a = [[int(v) for v in row] for row in np.asarray(matrix, dtype=object).tolist()]
    if not a or not a[0]:
        return 0
    nrows, ncols = len(a), len(a[0])
    prev = 1
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pr = a[rank]
        pv = pr[c]
        for r in range(rank + 1, nrows):
            row = a[r]
            f = row[c]
            for k in range(c + 1, ncols):
                row[k] = (row[k] * pv - f * pr[k]) // prev
            row[c] = 0
        # entries left of c in rows below are already zero
        prev = pv
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# integer products


def int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer product; falls back to Python integers when int64 could overflow."""
    if a.dtype != object and b.dtype != object and a.size and b.size:
        bound = int(np.abs(a).max()) * int(np.abs(b).max()) * a.shape[-1]
        if bound < 2**62:
            return a.astype(np.int64) @ b.astype(np.int64)
    return np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)
