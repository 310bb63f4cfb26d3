"""Monomial bases in x, y, z, w.

Every degree uses the same order: exponent vectors sorted lexicographically
in descending order, so degree 3 reads x^3, x^2y, x^2z, x^2w, xy^2, ...,
w^3 and degree 2 reads x^2, xy, xz, xw, y^2, yz, yw, z^2, zw, w^2.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

VARS = "xyzw"


@lru_cache(maxsize=None)
def exponents(d: int, nvars: int = 4) -> tuple[tuple[int, ...], ...]:
    def rec(rem: int, slots: int):
        if slots == 1:
            yield (rem,)
            return
        for e in range(rem, -1, -1):
            for tail in rec(rem - e, slots - 1):
                yield (e,) + tail

    return tuple(rec(d, nvars))


@lru_cache(maxsize=None)
def index_map(d: int, nvars: int = 4) -> dict[tuple[int, ...], int]:
    return {e: i for i, e in enumerate(exponents(d, nvars))}


CUBICS = exponents(3)
QUADRICS = exponents(2)
# variable indices of each cubic monomial, with repetition, ascending
CUBIC_VARS = tuple(tuple(i for i in range(4) for _ in range(e[i])) for e in CUBICS)


def monomial_index(exps) -> int:
    """Position of a cubic monomial x^a y^b z^c w^d in the fixed order."""
    e = tuple(int(x) for x in exps)
    if len(e) != 4 or any(x < 0 for x in e) or sum(e) != 3:
        raise ValueError(f"not a cubic exponent vector: {exps}")
    return index_map(3)[e]


@lru_cache(maxsize=None)
def exponent_array(d: int, nvars: int = 4) -> np.ndarray:
    a = np.array(exponents(d, nvars), dtype=np.int64).reshape(-1, nvars)
    a.setflags(write=False)
    return a


@lru_cache(maxsize=None)
def product_table(d1: int, d2: int) -> np.ndarray:
    """T[i, j] = index of (monomial i of degree d1) * (monomial j of degree d2)."""
    idx = index_map(d1 + d2)
    e1, e2 = exponents(d1), exponents(d2)
    t = np.array([[idx[tuple(a + b for a, b in zip(u, v))] for v in e2] for u in e1], dtype=np.int64)
    t.setflags(write=False)
    return t


def format_monomial(e) -> str:
    parts = []
    for v, k in zip(VARS, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts) or "1"
