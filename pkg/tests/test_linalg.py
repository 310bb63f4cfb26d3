from __future__ import annotations

import itertools

import numpy as np
import pytest

from cubiccensus import linalg
from cubiccensus.gf import make_field


def leibniz_det(m, p):
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= int(m[i][perm[i]])
        total += term
    return total % p


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_det_batch_matches_leibniz(p):
    rng = np.random.default_rng(p)
    mats = rng.integers(0, p, size=(200, 4, 4))
    got = linalg.det_batch_mod_p(mats, p)
    assert [int(x) for x in got] == [leibniz_det(m, p) for m in mats]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 9])
def test_rank_nullity_and_kernel(q):
    from cubiccensus.gf import field_of_order

    F = field_of_order(q)
    rng = np.random.default_rng(q)
    for _ in range(40):
        m, n = rng.integers(1, 7, size=2)
        a = rng.integers(0, q, size=(m, n))
        if rng.random() < 0.5 and m > 1:
            a[-1] = F.add(a[0], a[-1] * 0)  # duplicate a row
        r = linalg.rank(F, a)
        K = linalg.kernel(F, a)
        assert K.shape == (n - r, n)
        if K.size:
            prod = F.sum(F.mul(a[:, None, :], K[None, :, :]), axis=-1)
            assert not np.any(prod)
            assert linalg.rank(F, K) == K.shape[0]


def test_rref_shape():
    F = make_field(5)
    a = np.array([[0, 2, 4], [1, 1, 1], [1, 3, 0]])
    R, piv = linalg.rref(F, a)
    for i, c in enumerate(piv):
        assert R[i, c] == 1
        assert all(R[j, c] == 0 for j in range(R.shape[0]) if j != i)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_matmul_mod_p_exact(p):
    rng = np.random.default_rng(p)
    a = rng.integers(0, p, size=(50, 20))
    b = rng.integers(0, p, size=(20, 30))
    assert np.array_equal(linalg.matmul_mod_p(a, b, p), (a @ b) % p)


def test_inverse_mod_p():
    rng = np.random.default_rng(0)
    for _ in range(20):
        m = rng.integers(0, 7, size=(5, 5))
        if linalg.det_batch_mod_p(m[None], 7)[0] == 0:
            continue
        inv = linalg.inverse_mod_p(m, 7)
        assert np.array_equal((m @ inv) % 7, np.eye(5, dtype=np.int64))
