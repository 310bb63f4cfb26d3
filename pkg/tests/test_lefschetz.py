from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest

from cubiccensus import lefschetz as lf
from cubiccensus.linalg import rank_batch_mod_p
from cubiccensus.projgeom import enumerate_lines
from cubiccensus.gf import field_of_order

QS = [2, 3, 4, 5, 7, 8, 9]


def test_gl4_f2_by_brute_force():
    bits = np.array(list(itertools.product([0, 1], repeat=16)), dtype=np.int64).reshape(-1, 4, 4)
    invertible = int((rank_batch_mod_p(bits, 2) == 4).sum())
    assert invertible == lf.gl4_order(2) == 20160
    assert lf.pgl4_order(2) == 20160


@pytest.mark.parametrize("q", QS)
def test_prediction_identities(q):
    pred = lf.predicted_counts(q)
    assert pred.ok(), pred.identities()
    # purity with denominators cleared, written out independently
    purity = Fraction(q) ** 19 * (1 - Fraction(1, q**2)) * (1 - Fraction(1, q**3)) * (1 - Fraction(1, q**4))
    assert purity == pred.smooth_surfaces
    x_line = q**10 * (q - 1) ** 2 * (q**2 - 1) ** 2
    assert pred.lines * x_line // (q - 1) == pred.smooth_surfaces
    assert pred.average_lines() == 1


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_grassmannian_matches_enumeration(q):
    assert lf.grassmannian_count(q) == len(enumerate_lines(field_of_order(q)))


def test_known_values():
    p2 = lf.predicted_counts(2)
    assert (p2.smooth_surfaces, p2.lines, p2.x_line, p2.m_line) == (322_560, 35, 9216, 9216)
    assert lf.predicted_counts(3).smooth_surfaces == 982_575_360
    assert lf.pgl4_order(3) == 12_130_560


@pytest.mark.parametrize("bad", [0, 1, 6, 12, 2.0])
def test_rejects_non_prime_powers(bad):
    with pytest.raises(ValueError):
        lf.pgl4_order(bad)


def test_smooth_density_tends_to_one():
    d = [lf.smooth_density(q) for q in (2, 3, 5, 7, 11)]
    assert all(a < b < 1 for a, b in zip(d, d[1:]))


def test_poincare_polynomial_arithmetic():
    T = lf.PoincarePolynomial.one_plus_t
    pgl = T(3) * T(5) * T(7)
    assert pgl.betti_sum() == 8 and pgl.euler_characteristic() == 0
    x = T(1) ** 2 * T(3) ** 2
    assert x.coeffs == (1, 2, 1, 2, 4, 2, 1, 2, 1)
    quot, rem = x.divmod(T(1))
    assert rem.coeffs == (0,) and quot.coeffs == (1, 1, 0, 2, 2, 0, 1, 1)
    assert quot * T(1) == x
    assert str(T(2)) == "1 + t^2"
    with pytest.raises(ValueError):
        x.divmod(lf.PoincarePolynomial((1, 2)))


def test_poincare_identities_with_builtin_data():
    ids = lf.poincare_identities()
    assert ids["ok"] and ids["m_line_coeffs"] == [1, 1, 0, 2, 2, 0, 1, 1]
    bad = lf.poincare_identities(lf.PoincarePolynomial((1, 2, 1)))
    assert not bad["ok"]
