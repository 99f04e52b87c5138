import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rational_param, rational_q
from qaw.qcore import q_binomial, q_pochhammer
from qaw.qpoly import (
    RationalPoly,
    carlitz_lambda,
    carlitz_lambda00,
    carlitz_sums,
    carlitz_zeta,
    chebyshev_u,
    hermite_classical,
    hermite_classical_poly,
    hermite_sup_bound,
    mu,
    mu_poly,
    q_hermite,
    q_hermite_all,
    q_hermite_poly,
    q_hermite_polys,
    q_hermite_trig,
    rescaled_q_hermite,
    rogers_szego,
    rogers_szego_all,
    rogers_szego_poly,
)

LIN_QS = [Fraction(1, 3), Fraction(-1, 2), Fraction(2, 5), Fraction(-3, 4), Fraction(7, 9)]


# --- RationalPoly -------------------------------------------------------------


def test_rational_poly_trims_and_arithmetic():
    p = RationalPoly((1, 2, 0, 0))
    assert p.coeffs == (1, 2) and p.degree == 1
    x = RationalPoly.x()
    assert (x + 1) * (x - 1) == RationalPoly((-1, 0, 1))
    assert (x * x)(Fraction(1, 2)) == Fraction(1, 4)
    assert RationalPoly((1, 2, 3)).reflect(2) == RationalPoly((3, 2, 1))


# --- Rogers-Szego ------------------------------------------------------------


def test_rogers_szego_values():
    assert rogers_szego(0, 0.7, 0.3) == 1
    assert rogers_szego(2, 1.0, 0.5) == pytest.approx(3.5, abs=1e-15)
    q = Fraction(2, 7)
    assert rogers_szego_poly(2, q) == RationalPoly((1, 1 + q, 1))


@given(st.integers(0, 25), st.floats(-1, 1), st.floats(-0.9, 0.9))
def test_rogers_szego_recurrence_matches_definition(n, x, q):
    direct = sum(q_binomial(n, k, q) * x**k for k in range(n + 1))
    assert rogers_szego_all(n, x, q)[n] == pytest.approx(direct, rel=1e-10, abs=1e-10)


# --- q-Hermite ---------------------------------------------------------------


def test_q_hermite_values():
    assert q_hermite(1, 0.37, 0.2) == pytest.approx(0.74)
    assert q_hermite(2, 0.5, 0) == pytest.approx(0.0, abs=1e-15)
    q, x = 0.5, 0.3
    # h_3 = 8x^3 - 2(1-q)x - 2(1-q^2)x by running the recurrence by hand
    expect = 8 * x**3 - (2 * (1 - q) + 2 * (1 - q**2)) * x
    assert q_hermite(3, x, q) == pytest.approx(expect, abs=1e-15)
    assert q_hermite(3, x, q) == pytest.approx(float(q_hermite_poly(3, Fraction(1, 2))(Fraction(3, 10))), abs=1e-15)


def test_q_hermite_poly_low_orders():
    q = Fraction(1, 3)
    assert q_hermite_poly(0, q) == RationalPoly((1,))
    assert q_hermite_poly(1, q) == RationalPoly((0, 2))
    assert q_hermite_poly(2, q) == RationalPoly((-(1 - q), 0, 4))
    assert q_hermite_polys(6, q) == [q_hermite_poly(n, q) for n in range(7)]


@given(st.integers(0, 30), st.floats(-1, 1), st.floats(-0.9, 0.9))
def test_q_hermite_matches_trigonometric_form(n, x, q):
    assert q_hermite(n, x, q) == pytest.approx(q_hermite_trig(n, x, q), abs=1e-9 * max(1.0, hermite_sup_bound(n, q)))


def test_q_hermite_all_shape_and_values():
    x = np.linspace(-1, 1, 7).reshape(7, 1)
    H = q_hermite_all(5, x, 0.4)
    assert H.shape == (6, 7, 1)
    for n in range(6):
        np.testing.assert_allclose(H[n], q_hermite(n, x, 0.4), atol=1e-15)


def test_q_zero_gives_chebyshev_u():
    x = np.linspace(-1, 1, 101)
    for n in range(13):
        np.testing.assert_allclose(q_hermite(n, x, 0.0), chebyshev_u(n, x), atol=1e-12)


@pytest.mark.parametrize("q", [-0.5, 0.0, 0.5, 0.9])
def test_sup_bound(q):
    x = np.linspace(-1, 1, 1001)
    for n in range(16):
        assert np.max(np.abs(q_hermite(n, x, q))) <= hermite_sup_bound(n, q) * (1 + 1e-12)


def test_rescaled_limit_is_hermite():
    x = np.linspace(-3, 3, 25)
    for n in range(1, 9):
        errs = [np.max(np.abs(rescaled_q_hermite(n, x, 1 - 10.0**-k) - hermite_classical(n, x))) for k in range(3, 7)]
        if n <= 2:
            assert max(errs) < 1e-12  # exact for n <= 2
        else:
            assert all(b < a for a, b in zip(errs, errs[1:]))


def test_hermite_classical_values():
    assert hermite_classical(1, 0.3) == 0.3
    assert hermite_classical(2, 1.0) == 0
    assert hermite_classical(3, 2.0) == 2
    assert hermite_classical_poly(4) == RationalPoly((3, 0, -6, 0, 1))


# --- exact identities -------------------------------------------------------


@pytest.mark.parametrize("q", LIN_QS)
def test_linearization_exact(q):
    H = [q_hermite_poly(k, q) for k in range(17)]
    for n in range(9):
        for m in range(9):
            rhs = RationalPoly()
            for j in range(min(n, m) + 1):
                rhs = rhs + H[n + m - 2 * j] * (q_binomial(m, j, q) * q_binomial(n, j, q) * q_pochhammer(q, j, q))
            assert H[n] * H[m] == rhs


def test_mu_poly_values():
    a, q = Fraction(2, 5), Fraction(1, 3)
    assert mu_poly(0, a, q) == RationalPoly((1,))
    assert mu_poly(1, a, q) == RationalPoly((1, 1 - a))
    assert mu(3, 0.7, 0.4, 0.3) == pytest.approx(float(mu_poly(3, Fraction(2, 5), Fraction(3, 10))(Fraction(7, 10))), rel=1e-14)


@given(rational_param(), rational_q())
def test_mu_identities_exact(a, q):
    for n in range(9):
        reflected = mu_poly(n, a, q).reflect(n)
        first = RationalPoly()
        second = RationalPoly()
        for j in range(n + 1):
            c = q_binomial(n, j, q)
            first = first + rogers_szego_poly(n - j, q) * (c * (-a) ** j * q ** (j * (j - 1) // 2))
            second = second + mu_poly(n - j, a, q).reflect(n - j) * (c * a**j)
        assert reflected == first
        assert rogers_szego_poly(n, q) == second


# --- Carlitz -------------------------------------------------------------------


def test_carlitz_trivial_values():
    assert carlitz_zeta(0, 0.4, 0.0, 0.5) == pytest.approx(1.0)
    assert carlitz_lambda00(0.3, -0.5, 0.0, 0.5) == pytest.approx(1.0)


def test_carlitz_zeta_modes_agree():
    z = carlitz_zeta(2, 0.5, 0.3, 0.4)
    assert z == pytest.approx(carlitz_zeta(2, 0.5, 0.3, 0.4, mode="series"), rel=1e-10)


@given(st.integers(0, 5), st.floats(-1, 1), st.floats(-0.7, 0.7), st.floats(-0.8, 0.8))
def test_carlitz_zeta_modes_agree_random(n, x, a, q):
    closed = carlitz_zeta(n, x, a, q)
    series = carlitz_zeta(n, x, a, q, mode="series")
    assert closed == pytest.approx(series, rel=1e-9, abs=1e-10)


@given(st.integers(0, 4), st.integers(0, 4), st.floats(-1, 1), st.floats(-1, 1), st.floats(-0.6, 0.6), st.floats(-0.8, 0.8))
def test_carlitz_lambda_modes_agree_random(m, n, x, y, a, q):
    closed = carlitz_lambda(m, n, x, y, a, q)
    series = carlitz_lambda(m, n, x, y, a, q, mode="series")
    assert closed == pytest.approx(series, rel=1e-9, abs=1e-10)


@pytest.mark.parametrize("t", [0.3, -0.3, 0.6, -0.6])
@pytest.mark.parametrize("q", [0.3, -0.3, 0.6, -0.6])
def test_carlitz_sums(t, q):
    s = carlitz_sums(t, q)
    assert s["lhs1"] == pytest.approx(s["rhs1"], rel=1e-10)
    assert s["lhs2"] == pytest.approx(s["rhs2"], rel=1e-10)


def test_carlitz_sums_direct_oracle():
    # independent truncated sums with w_k(1) as q-binomial row sums
    t, q = 0.45, -0.35
    lhs1 = lhs2 = 0.0
    for k in range(120):
        w = sum(q_binomial(k, j, q) for j in range(k + 1))
        lhs1 += w * t**k / q_pochhammer(q, k, q)
        lhs2 += w * w * t**k / q_pochhammer(q, k, q)
    s = carlitz_sums(t, q)
    assert s["lhs1"] == pytest.approx(lhs1, rel=1e-12)
    assert s["lhs2"] == pytest.approx(lhs2, rel=1e-12)
