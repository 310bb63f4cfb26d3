from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cubiccensus import gf
from cubiccensus.cubic import CubicForm, fermat, monomial_values, parse_form
from cubiccensus.gf import field_of_order, make_field
from cubiccensus.projgeom import ProjPoint

from conftest import random_invertible

coeff_lists = st.lists(st.integers(0, 10**6), min_size=20, max_size=20)


def _form(F, ints):
    return CubicForm(F, tuple(i % F.q for i in ints))


def _point(F, ints):
    v = [i % F.q for i in ints]
    if not any(v):
        v[0] = 1
    return ProjPoint(F, tuple(v))


@given(st.sampled_from([2, 4, 5, 7, 8, 11]), coeff_lists, st.lists(st.integers(0, 10**6), min_size=4, max_size=4))
def test_euler_identity_away_from_3(q, c, x):
    F = field_of_order(q)
    f = _form(F, c)
    P = _point(F, x)
    grad = f.partials().evaluate(P)
    lhs = 0
    for xi, g in zip(P.coords, grad):
        lhs = F.add(lhs, F.mul(xi, g.value))
    assert lhs == F.mul(F.from_int(3), f.evaluate(P).value)


def test_euler_identity_fails_in_characteristic_3():
    # x^3 has zero gradient everywhere in char 3 but does not vanish at [1:0:0:0]
    F = make_field(3)
    f = CubicForm.from_terms(F, {(3, 0, 0, 0): 1})
    P = ProjPoint(F, (1, 0, 0, 0))
    assert all(g.value == 0 for g in f.partials().evaluate(P))
    assert f.evaluate(P).value == 1


def test_partials_of_a_known_form():
    F = make_field(7)
    f = CubicForm.from_terms(F, {(2, 1, 0, 0): 3, (0, 0, 1, 2): 1})  # 3x^2y + zw^2
    P = ProjPoint(F, (1, 2, 3, 4))
    fx, fy, fz, fw = (g.value for g in f.partials().evaluate(P))
    assert (fx, fy, fz, fw) == ((6 * 1 * 2) % 7, 3 % 7, 16 % 7, (2 * 3 * 4) % 7)


@given(st.sampled_from([2, 3, 4, 5]), coeff_lists, st.integers(0, 2**32))
def test_compose_matches_evaluation(q, c, seed):
    F = field_of_order(q)
    rng = np.random.default_rng(seed)
    f = _form(F, c)
    g = random_invertible(F, rng)
    h = random_invertible(F, rng)
    fg = f.compose(g)
    for _ in range(5):
        v = rng.integers(0, q, size=4)
        if not v.any():
            continue
        gv = F.sum(F.mul(g, v[None]), axis=-1)
        # raw vectors, not normalised points: F(lam v) = lam^3 F(v)
        lhs = F.dot(fg.vector(), monomial_values(F, v[None], 3)[0])
        rhs = F.dot(f.vector(), monomial_values(F, gv[None], 3)[0])
        assert lhs == rhs
    gh = F.sum(F.mul(g[:, :, None], h[None, :, :]), axis=1)
    assert f.compose(g).compose(h) == f.compose(gh)


def test_evaluation_over_extension_uses_embedding():
    F2, F4 = make_field(2), make_field(2, 2)
    f = fermat(F2)
    w = F4.alpha  # w^2 + w + 1 = 0, w^3 = 1
    P = ProjPoint(F4, (1, w, 0, 0))
    assert f.evaluate(P).value == F4.add(1, F4.power(w, 3))


def test_parse_and_format():
    F = make_field(2)
    assert parse_form(F, "fermat") == fermat(F)
    assert str(fermat(F)) == "x^3 + y^3 + z^3 + w^3"
    f = parse_form(F, "1," + ",".join(["0"] * 19))
    assert str(f) == "x^3"
    with pytest.raises(ValueError):
        parse_form(F, "1,2,3")
    with pytest.raises(ValueError):
        parse_form(F, ",".join(["2"] * 20))


def test_normalized_and_scale():
    F = make_field(5)
    f = CubicForm(F, (0, 3) + (1,) * 18)
    n = f.normalized()
    assert n.coeffs[1] == 1 and n.scale(3) == f


@pytest.mark.parametrize("p", [5, 7, 11])
def test_fermat_contains_antidiagonal_line(p):
    from cubiccensus.projgeom import Line

    F = make_field(p)
    f = fermat(F)
    m1 = p - 1
    # {x + y = 0, z + w = 0} lies on the surface, {x = y, z = w} does not
    assert f.contains(Line.from_basis(F, [[1, m1, 0, 0], [0, 0, 1, m1]]))
    assert not f.contains(Line.from_basis(F, [[1, 1, 0, 0], [0, 0, 1, 1]]))
