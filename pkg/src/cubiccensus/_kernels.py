"""Compiled inner loops over prime fields.

Vectors live in F_p^20 (or F_p^n); classes of P^(n-1) are indexed by the
rank of :mod:`cubiccensus.projgeom`: offs[lead] - w[lead] + sum(v_i * w_i)
with w_i = p^(n-1-i) and v normalised.
"""

from __future__ import annotations

import numba
import numpy as np


@numba.njit(cache=True)
def rref_inplace(a, p, inv):
    m, n = a.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
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
def kernel_rref(a, p, inv):
    """RREF basis of the right kernel of a (destroys a)."""
    m, n = a.shape
    r, piv = rref_inplace(a, p, inv)
    is_piv = np.zeros(n, dtype=np.bool_)
    for i in range(r):
        is_piv[piv[i]] = True
    d = n - r
    basis = np.zeros((d, n), dtype=np.int64)
    t = 0
    for f in range(n):
        if is_piv[f]:
            continue
        basis[t, f] = 1
        for i in range(r):
            basis[t, piv[i]] = (p - a[i, f]) % p
        t += 1
    rref_inplace(basis, p, inv)
    return basis


@numba.njit(cache=True)
def _walk_span(basis, p, weights, offs, marks, mode):
    """Visit every normalised vector of the row span of an RREF basis.

    mode 0: set marks[rank] = True.  mode 1: count ranks with marks[rank] False.
    Returns the number of visited classes (mode 0) or the count (mode 1).
    """
    d, n = basis.shape
    nz_count = np.zeros(d, dtype=np.int64)
    nz_idx = np.zeros((d, n), dtype=np.int64)
    leads = np.zeros(d, dtype=np.int64)
    for j in range(d):
        c = 0
        lead = -1
        for i in range(n):
            if basis[j, i] != 0:
                if lead < 0:
                    lead = i
                nz_idx[j, c] = i
                c += 1
        nz_count[j] = c
        leads[j] = lead
    v = np.zeros(n, dtype=np.int64)
    lam = np.zeros(d, dtype=np.int64)
    total = 0
    for j in range(d):
        val = 0
        for i in range(n):
            v[i] = basis[j, i]
            val += v[i] * weights[i]
        for t in range(d):
            lam[t] = 0
        base = offs[leads[j]] - weights[leads[j]]
        while True:
            rank = base + val
            if mode == 0:
                marks[rank] = True
                total += 1
            elif not marks[rank]:
                total += 1
            t = d - 1
            while t > j:
                lam[t] += 1
                for s in range(nz_count[t]):
                    i = nz_idx[t, s]
                    new = v[i] + basis[t, i]
                    if new >= p:
                        new -= p
                    val += (new - v[i]) * weights[i]
                    v[i] = new
                if lam[t] < p:
                    break
                lam[t] = 0
                t -= 1
            if t == j:
                break
    return total


@numba.njit(cache=True)
def sieve_mark(conds, p, inv, weights, offs, marks):
    """Mark every class in the kernel of each condition matrix conds[r]."""
    total = 0
    for r in range(conds.shape[0]):
        a = conds[r].copy()
        basis = kernel_rref(a, p, inv)
        if basis.shape[0] > 0:
            total += _walk_span(basis, p, weights, offs, marks, 0)
    return total


@numba.njit(cache=True)
def count_unmarked_in_kernels(conds, p, inv, weights, offs, marks):
    """For each matrix, the number of classes in its kernel left unmarked."""
    out = np.zeros(conds.shape[0], dtype=np.int64)
    for r in range(conds.shape[0]):
        a = conds[r].copy()
        basis = kernel_rref(a, p, inv)
        if basis.shape[0] > 0:
            out[r] = _walk_span(basis, p, weights, offs, marks, 1)
    return out


@numba.njit(cache=True)
def gf2_first_hit(forms, masks, starts, active):
    """Bit-parallel search over F_2.

    forms: uint32 bit vectors (bit i = coefficient of monomial i).  Rep r owns
    masks[starts[r]:starts[r+1]]; a form is singular at r when every mask has
    even overlap.  Returns the first such r per form, or -1.
    """
    nrep = starts.shape[0] - 1
    out = np.full(forms.shape[0], -1, dtype=np.int64)
    for f in range(forms.shape[0]):
        if not active[f]:
            continue
        x = forms[f]
        for r in range(nrep):
            ok = True
            for s in range(starts[r], starts[r + 1]):
                y = x & masks[s]
                # parity of y
                y ^= y >> 16
                y ^= y >> 8
                y ^= y >> 4
                y ^= y >> 2
                y ^= y >> 1
                if y & 1:
                    ok = False
                    break
            if ok:
                out[f] = r
                break
    return out


@numba.njit(cache=True)
def contained_lines(vals, p, nlines):
    """vals: (B, 4 * nlines) exact products R @ F as floats.  True where all
    four restriction coefficients of a line vanish mod p."""
    out = np.zeros((vals.shape[0], nlines), dtype=np.bool_)
    for b in range(vals.shape[0]):
        for l in range(nlines):
            ok = True
            for r in range(4):
                if np.int64(vals[b, 4 * l + r]) % p != 0:
                    ok = False
                    break
            out[b, l] = ok
    return out


@numba.njit(cache=True)
def _rank_local(a, p, inv):
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        s = inv[a[r, c]]
        for j in range(c, n):
            a[r, j] = (a[r, j] * s) % p
        for i in range(r + 1, m):
            f = a[i, c]
            if f != 0:
                for j in range(c, n):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        r += 1
    return r


@numba.njit(cache=True)
def resultant_verdicts(grads, var, mult, tab, nonred, p, inv):
    """Macaulay test per form: 1 smooth, 0 singular, -1 extraneous minor singular.

    Row r of M holds (m_r / x_var^2) * F_var, i.e. grads[var[r]] placed at
    columns tab[mult[r], :].
    """
    B = grads.shape[0]
    n = var.shape[0]
    k = nonred.shape[0]
    pos = np.full(n, -1, dtype=np.int64)
    for t in range(k):
        pos[nonred[t]] = t
    out = np.empty(B, dtype=np.int64)
    M = np.zeros((n, n), dtype=np.int64)
    S = np.zeros((k, k), dtype=np.int64)
    for b in range(B):
        M[:, :] = 0
        for r in range(n):
            g = grads[b, var[r]]
            for j in range(g.shape[0]):
                M[r, tab[mult[r], j]] = g[j]
        for t in range(k):
            for u in range(k):
                S[t, u] = M[nonred[t], nonred[u]]
        if _rank_local(S, p, inv) < k:
            out[b] = -1
        else:
            out[b] = 1 if _rank_local(M, p, inv) == n else 0
    return out
