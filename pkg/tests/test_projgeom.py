from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cubiccensus import gf, projgeom as pg
from cubiccensus.cubic import CubicForm, monomial_values
from cubiccensus.gf import field_of_order, make_field

from conftest import random_invertible


def mobius(n):
    out, m, d = 1, n, 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            out = -out
        d += 1
    return -out if m > 1 else out


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_enumeration_order_and_rank(q):
    pts = pg.enumerate_array(3, q)
    assert pts.shape == (pg.proj_count(3, q), 4)
    assert np.array_equal(pg.class_rank(q, pts), np.arange(pts.shape[0]))
    assert np.array_equal(pg.class_unrank(q, 3, np.arange(pts.shape[0])), pts)
    F = field_of_order(q)
    assert np.array_equal(pg.normalize_rows(F, pts), pts)


@given(st.sampled_from([2, 3, 4, 5, 7]), st.data())
def test_rank_unrank_p19(q, data):
    r = data.draw(st.integers(0, pg.proj_count(19, q) - 1))
    v = pg.class_unrank(q, 19, np.array([r]))
    assert int(pg.class_rank(q, v)[0]) == r


def test_projpoint_normalises():
    F = make_field(5)
    P = pg.ProjPoint(F, (0, 3, 1, 4))
    assert P.coords == (0, 1, 2, 3)
    assert pg.ProjPoint(F, (0, 2, 4, 1)) == P
    with pytest.raises(ValueError):
        pg.ProjPoint(F, (0, 0, 0, 0))
    assert str(P) == "[0:1:2:3]"
    S = pg.enumerate_proj_points(3, F)
    assert len(S) == 156 and S[P.rank] == P


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_line_count_and_incidence(q):
    F = field_of_order(q)
    lines = pg.enumerate_lines(F)
    assert len(lines) == pg.grassmannian_count(q) == (q * q + 1) * (q * q + q + 1)
    if q > 4:
        return
    # every pair of distinct points lies on exactly one line
    npts = pg.proj_count(3, q)
    seen = np.zeros((npts, npts), dtype=np.int64)
    for ln in lines:
        r = pg.class_rank(q, pg.line_points_array(ln))
        assert len(r) == q + 1
        for a, b in itertools.combinations(r, 2):
            seen[a, b] += 1
    iu = np.triu_indices(npts, 1)
    assert np.all(seen[iu] == 1)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_restriction_map_is_rank_4_and_matches_evaluation(q):
    F = field_of_order(q)
    R = pg.restriction_stack(F)
    rng = np.random.default_rng(q)
    st_params = np.array([[s, t] for s in range(q) for t in range(q)])
    binary = monomial_values(F, np.concatenate([st_params, np.zeros((len(st_params), 2), dtype=np.int64)], axis=1), 3)[:, [0, 1, 4, 10]]
    for idx in rng.choice(len(R), size=min(len(R), 20), replace=False):
        ln = pg.enumerate_lines(F)[idx]
        from cubiccensus.linalg import rank

        assert rank(F, R[idx]) == 4
        c = rng.integers(0, q, size=20)
        restricted = F.sum(F.mul(R[idx], c[None]), axis=-1)
        u, v = ln.array()
        pts = F.add(F.mul(st_params[:, :1], u[None]), F.mul(st_params[:, 1:], v[None]))
        direct = F.sum(F.mul(monomial_values(F, pts, 3), c[None]), axis=-1)
        via_map = F.sum(F.mul(binary, restricted[None]), axis=-1)
        assert np.array_equal(direct, via_map)


@given(st.sampled_from([2, 3, 5]), st.data())
def test_restriction_is_linear(q, data):
    F = field_of_order(q)
    lines = pg.enumerate_lines(F)
    ln = lines[data.draw(st.integers(0, len(lines) - 1))]
    a = data.draw(st.lists(st.integers(0, q - 1), min_size=20, max_size=20))
    b = data.draw(st.lists(st.integers(0, q - 1), min_size=20, max_size=20))
    lam = data.draw(st.integers(0, q - 1))
    A, B = CubicForm(F, a), CubicForm(F, b)
    lhs = (A.scale(lam) + B).restrict_to_line(ln)
    rhs = F.add(F.mul(np.array(A.restrict_to_line(ln)), lam), np.array(B.restrict_to_line(ln)))
    assert lhs == tuple(int(x) for x in rhs)


def test_line_transform_permutes_lines():
    F = make_field(3)
    g = random_invertible(F, np.random.default_rng(1))
    lines = pg.enumerate_lines(F)
    images = {ln.transform(g) for ln in lines}
    assert images == set(lines)


def test_line_rejects_degenerate_basis():
    F = make_field(2)
    with pytest.raises(ValueError):
        pg.Line.from_basis(F, [[1, 0, 0, 0], [1, 0, 0, 0]])


@pytest.mark.parametrize("q,k", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)])
def test_orbit_rep_counts_follow_mobius(q, k):
    F = field_of_order(q)
    exact = sum(mobius(k // d) * pg.proj_count(3, q**d) for d in range(1, k + 1) if k % d == 0)
    reps = pg.orbit_reps_array(3, F, k)
    assert exact % k == 0 and len(reps) == exact // k
    ext = gf.extension(F, k)
    for P in reps[:50]:
        orbit = pg.orbit_of(pg.ProjPoint(ext, tuple(P)), q)
        assert len(orbit) == k
        assert min(o.rank for o in orbit) == pg.ProjPoint(ext, tuple(P)).rank
