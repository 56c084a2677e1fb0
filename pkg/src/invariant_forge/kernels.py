"""Hot integer kernels with a numba path and a pure-numpy fallback.

Every kernel exists twice: ``*_numba`` (``@njit``, releases the GIL) and
``*_numpy`` (vectorised numpy).  The undecorated name dispatches to the
active backend.  The backend is ``numba`` when numba imports and the
environment variable ``INVARIANT_FORGE_NO_JIT`` is unset or ``0``;
otherwise ``numpy``.  Both paths are exact (int64 arithmetic with explicit
overflow guards in the callers) and must agree bit for bit.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


# p^2 must fit in int64 for the elimination kernels.
MAX_PRIME = 2**31


def _env_backend() -> str:
    flag = os.environ.get("INVARIANT_FORGE_NO_JIT", "0").strip().lower()
    if not HAVE_NUMBA or flag not in ("", "0", "false", "no"):
        return "numpy"
    return "numba"


BACKEND = _env_backend()


def set_backend(name: str) -> None:
    """Switch the active backend at runtime (``"numba"`` or ``"numpy"``)."""
    global BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    BACKEND = name


# --------------------------------------------------------------------------
# reduced row echelon form over GF(p)


@njit(cache=True, nogil=True)
def _inv_mod(a, p):
    # extended Euclid; a is a nonzero residue
    r0, r1 = p, a % p
    s0, s1 = 0, 1
    while r1 != 0:
        qt = r0 // r1
        r0, r1 = r1, r0 - qt * r1
        s0, s1 = s1, s0 - qt * s1
    return s0 % p


@njit(cache=True, nogil=True)
def rref_mod_p_numba(A, p):
    m, n = A.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    nz = np.empty(n, dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        inv = _inv_mod(A[r, c], p)
        cnt = 0
        for j in range(c, n):
            if A[r, j] != 0:
                A[r, j] = (A[r, j] * inv) % p
                nz[cnt] = j
                cnt += 1
        for i in range(m):
            if i != r:
                f = A[i, c]
                if f != 0:
                    for k in range(cnt):
                        j = nz[k]
                        A[i, j] = (A[i, j] - f * A[r, j]) % p
        pivots[r] = c
        r += 1
    return r, pivots[:r].copy()


def rref_mod_p_numpy(A, p):
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        hits = np.flatnonzero(A[r:, c])
        if hits.size == 0:
            continue
        piv = r + hits[0]
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        rows = np.flatnonzero(A[:, c])
        rows = rows[rows != r]
        if rows.size:
            cols = np.flatnonzero(A[r])
            block = A[np.ix_(rows, cols)] - np.outer(A[rows, c], A[r, cols])
            A[np.ix_(rows, cols)] = block % p
        pivots.append(c)
        r += 1
    return r, np.asarray(pivots, dtype=np.int64)


def rref_mod_p(A, p):
    """Reduce ``A`` (int64, entries in ``[0, p)``) in place to RREF mod ``p``.

    Returns ``(rank, pivot_columns)``.
    """
    if BACKEND == "numba":
        return rref_mod_p_numba(A, p)
    return rref_mod_p_numpy(A, p)


# --------------------------------------------------------------------------
# monomial weights for diagonalizable actions


@njit(cache=True, nogil=True)
def monomial_weights_numba(exps, weights, moduli):
    M, n = exps.shape
    s = moduli.shape[0]
    out = np.zeros((M, s), dtype=np.int64)
    for a in range(M):
        for j in range(s):
            acc = 0
            for i in range(n):
                acc += exps[a, i] * weights[i, j]
            out[a, j] = acc % moduli[j]
    return out


def monomial_weights_numpy(exps, weights, moduli):
    return (exps @ weights) % moduli


def monomial_weights(exps, weights, moduli):
    """Weight vectors ``(sum_i w_ij k_i mod m_j)_j`` for each exponent row."""
    if BACKEND == "numba":
        return monomial_weights_numba(exps, weights, moduli)
    return monomial_weights_numpy(exps, weights, moduli)


# --------------------------------------------------------------------------
# character sums in the group ring Z[C_N]
#
# An element of Q(zeta_N) written as sum_r c_r zeta^r is stored as the
# integer vector (c_0..c_{N-1}); multiplying by zeta^e is a cyclic shift.
# 1/prod_i(1 - zeta^{e_i} t) expands by the recurrence
#   new[k] = old[k] + zeta^e * new[k-1]   for each factor.


@njit(cache=True, nogil=True)
def charsum_group_ring_numba(exps, counts, N, D):
    G, n = exps.shape
    total = np.zeros((D + 1, N), dtype=np.int64)
    S = np.zeros((D + 1, N), dtype=np.int64)
    for g in range(G):
        S[:, :] = 0
        S[0, 0] = 1
        for i in range(n):
            e = exps[g, i] % N
            for k in range(1, D + 1):
                for r in range(N):
                    S[k, (r + e) % N] += S[k - 1, r]
        w = counts[g]
        for k in range(D + 1):
            for r in range(N):
                total[k, r] += w * S[k, r]
    return total


def charsum_group_ring_numpy(exps, counts, N, D, chunk=4096):
    G, n = exps.shape
    total = np.zeros((D + 1, N), dtype=np.int64)
    cols = np.arange(N)
    for start in range(0, G, chunk):
        e = exps[start:start + chunk] % N
        w = counts[start:start + chunk]
        S = np.zeros((e.shape[0], D + 1, N), dtype=np.int64)
        S[:, 0, 0] = 1
        for i in range(n):
            idx = (cols[None, :] - e[:, i:i + 1]) % N
            for k in range(1, D + 1):
                S[:, k, :] += np.take_along_axis(S[:, k - 1, :], idx, axis=1)
        total += np.einsum("g,gkr->kr", w, S)
    return total


def charsum_group_ring(exps, counts, N, D):
    """Sum of ``counts[g] / prod_i (1 - zeta_N^{exps[g,i]} t)`` to order ``D``.

    Returns an int64 array of shape ``(D + 1, N)`` whose row ``k`` is the
    group-ring vector of the ``t^k`` coefficient.
    """
    if BACKEND == "numba":
        return charsum_group_ring_numba(exps, counts, N, D)
    return charsum_group_ring_numpy(exps, counts, N, D)
