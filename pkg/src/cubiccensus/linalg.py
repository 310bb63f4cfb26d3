"""Row reduction, rank and kernels over finite fields.

Prime fields go through small numba kernels on int64 arrays; extension
fields use the table arithmetic of :class:`~cubiccensus.gf.FieldDescriptor`
row by row, which is slower but only needed off the hot paths.
"""

from __future__ import annotations

import numba
import numpy as np

from .gf import FieldDescriptor


def _inverse_table(p: int) -> np.ndarray:
    t = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        t[a] = pow(a, -1, p)
    return t


@numba.njit(cache=True)
def _rref_prime(a, p, inv, col_order):
    """In-place RREF of a (rows x cols) mod p, visiting columns in col_order.

    Returns (rank, pivot columns in visiting order).
    """
    m, n = a.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for ci in range(n):
        if r == m:
            break
        c = col_order[ci]
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(n):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        s = inv[a[r, c]]
        if s != 1:
            for j in range(n):
                a[r, j] = (a[r, j] * s) % p
        for i in range(m):
            if i != r:
                f = a[i, c]
                if f != 0:
                    for j in range(n):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
        pivots[r] = c
        r += 1
    return r, pivots[:r]


@numba.njit(cache=True)
def _rank_prime_batch(a, p, inv):
    """Ranks of a stack of matrices (B, rows, cols); destroys ``a``."""
    b, m, n = a.shape
    out = np.empty(b, dtype=np.int64)
    for k in range(b):
        r = 0
        for c in range(n):
            if r == m:
                break
            piv = -1
            for i in range(r, m):
                if a[k, i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, n):
                    t = a[k, r, j]
                    a[k, r, j] = a[k, piv, j]
                    a[k, piv, j] = t
            s = inv[a[k, r, c]]
            for j in range(c, n):
                a[k, r, j] = (a[k, r, j] * s) % p
            for i in range(r + 1, m):
                f = a[k, i, c]
                if f != 0:
                    for j in range(c, n):
                        a[k, i, j] = (a[k, i, j] - f * a[k, r, j]) % p
            r += 1
        out[k] = r
    return out


@numba.njit(cache=True)
def _rank_gf2_packed(rows):
    """Ranks over F_2 of a stack (B, m) of matrices whose rows are packed into uint64."""
    b, m = rows.shape
    out = np.empty(b, dtype=np.int64)
    for k in range(b):
        r = 0
        for i in range(m):
            v = rows[k, i]
            if v == 0:
                continue
            low = v & (~v + np.uint64(1))
            for j in range(i + 1, m):
                if rows[k, j] & low:
                    rows[k, j] ^= v
            r += 1
        out[k] = r
    return out


@numba.njit(cache=True)
def _det_prime_batch(a, p, inv):
    """Determinants mod p of a stack of square matrices; destroys ``a``."""
    b, n, _ = a.shape
    out = np.empty(b, dtype=np.int64)
    for k in range(b):
        det = 1
        for c in range(n):
            piv = -1
            for i in range(c, n):
                if a[k, i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                det = 0
                break
            if piv != c:
                for j in range(c, n):
                    t = a[k, c, j]
                    a[k, c, j] = a[k, piv, j]
                    a[k, piv, j] = t
                det = (-det) % p
            det = (det * a[k, c, c]) % p
            s = inv[a[k, c, c]]
            for i in range(c + 1, n):
                f = (a[k, i, c] * s) % p
                if f != 0:
                    for j in range(c, n):
                        a[k, i, j] = (a[k, i, j] - f * a[k, c, j]) % p
        out[k] = det
    return out


_INV_CACHE: dict[int, np.ndarray] = {}


def inverse_table(p: int) -> np.ndarray:
    t = _INV_CACHE.get(p)
    if t is None:
        t = _INV_CACHE[p] = _inverse_table(p)
    return t


def rank_batch_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    a = np.ascontiguousarray(mats, dtype=np.int64) % p
    if p == 2 and 0 < a.shape[-1] <= 64:
        weights = np.left_shift(np.uint64(1), np.arange(a.shape[-1], dtype=np.uint64))
        packed = (a.astype(np.uint64) * weights).sum(axis=-1, dtype=np.uint64)
        return _rank_gf2_packed(np.ascontiguousarray(packed))
    return _rank_prime_batch(a, p, inverse_table(p))


def det_batch_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    a = np.ascontiguousarray(mats, dtype=np.int64) % p
    if a.shape[-1] == 0:
        return np.ones(a.shape[0], dtype=np.int64)
    return _det_prime_batch(a, p, inverse_table(p))


def rref(field: FieldDescriptor, mat, col_order=None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; columns are visited in ``col_order``.

    Returns (R, pivots) where pivots[i] is the pivot column of row i; rows
    beyond len(pivots) are zero.
    """
    a = np.array(mat, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    n = a.shape[1]
    order = np.arange(n, dtype=np.int64) if col_order is None else np.asarray(col_order, dtype=np.int64)
    if a.shape[0] == 0 or n == 0:
        return a, []
    if field.k == 1:
        a %= field.p
        r, piv = _rref_prime(a, field.p, inverse_table(field.p), order)
        return a, [int(c) for c in piv]
    pivots: list[int] = []
    r = 0
    m = a.shape[0]
    for c in order:
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = field.mul(a[r], field.inv(int(a[r, c])))
        f = a[:, c].copy()
        f[r] = 0
        rows = np.nonzero(f)[0]
        if rows.size:
            a[rows] = field.sub(a[rows], field.mul(f[rows, None], a[r][None, :]))
        pivots.append(int(c))
        r += 1
    return a, pivots


def rank(field: FieldDescriptor, mat) -> int:
    return len(rref(field, mat)[1])


def kernel(field: FieldDescriptor, mat) -> np.ndarray:
    """Basis of the right kernel {v : mat v = 0}, returned in RREF.

    With the basis in RREF, the vector sum(l_j * b_j) is normalised (first
    nonzero entry 1) exactly when the first nonzero l_j is 1.
    """
    a = np.asarray(mat, dtype=np.int64)
    n = a.shape[1]
    r, piv = rref(field, a)
    free = [c for c in range(n) if c not in set(piv)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, c in enumerate(piv):
            basis[t, c] = field.neg(int(r[i, f]))
    if len(free) == 0:
        return basis
    b, bp = rref(field, basis)
    return b[: len(bp)]


def inverse_mod_p(mat, p: int) -> np.ndarray:
    a = np.asarray(mat, dtype=np.int64) % p
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("square matrix expected")
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    order = np.arange(2 * n, dtype=np.int64)
    r, piv = _rref_prime(aug, p, inverse_table(p), order)
    if r < n or int(piv[n - 1]) != n - 1:
        raise ValueError("matrix is singular mod p")
    return aug[:, n:].copy()


def matmul_mod_p(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact a @ b mod p through float64 BLAS, chunked to keep sums below 2^53."""
    a = np.asarray(a)
    b = np.asarray(b)
    inner = a.shape[-1]
    bound = inner * (p - 1) ** 2
    if bound < 2**24:
        out = a.astype(np.float32) @ b.astype(np.float32)
    elif bound < 2**53:
        out = a.astype(np.float64) @ b.astype(np.float64)
    else:  # pragma: no cover - far outside the fields used here
        return (a.astype(object) @ b.astype(object)) % p
    return np.mod(out, p).astype(np.int64)
