import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from spectral_universality.errors import DomainError
from spectral_universality.specfun import (
    BesselOrder,
    bessel_j,
    bessel_j_half_integer,
    double_factorial,
    gamma_fn,
    universal_profile,
    universal_profile_derivative_at_zero,
)


def test_gamma_values():
    assert gamma_fn(1) == 1
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert gamma_fn(2.5) == pytest.approx(1.5 * 0.5 * math.sqrt(math.pi), rel=1e-15)
    assert gamma_fn(2.5) == pytest.approx(1.3293403882, abs=1e-10)


@pytest.mark.parametrize("x", [0, -1.0, -0.5])
def test_gamma_domain(x):
    with pytest.raises(DomainError):
        gamma_fn(x)


@given(st.floats(min_value=1e-3, max_value=50))
def test_gamma_matches_mpmath(x):
    assert gamma_fn(x) == pytest.approx(float(mpmath.gamma(x)), rel=1e-13)


@pytest.mark.parametrize("x", np.arange(0.5, 10.01, 0.5))
def test_duplication_formula(x):
    lhs = math.sqrt(math.pi) * gamma_fn(2 * x)
    rhs = 2 ** (2 * x - 1) * gamma_fn(x) * gamma_fn(x + 0.5)
    assert abs(lhs - rhs) <= 1e-12 * gamma_fn(2 * x)


@pytest.mark.parametrize("k, expected", [(-1, 1), (0, 1), (1, 1), (5, 15), (8, 384), (9, 945)])
def test_double_factorial(k, expected):
    assert double_factorial(k) == expected


def test_double_factorial_domain():
    with pytest.raises(DomainError):
        double_factorial(-2)


def test_bessel_order():
    assert BesselOrder.of(1.5) == BesselOrder(3)
    assert BesselOrder(3).value == 1.5
    assert BesselOrder(3).is_half_integer
    with pytest.raises(DomainError):
        BesselOrder(-1)
    with pytest.raises(DomainError):
        BesselOrder.of(0.25)


def test_bessel_examples():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0
    assert bessel_j(0.5, math.pi / 2) == pytest.approx(2 / math.pi, abs=1e-15)


def test_bessel_domain():
    with pytest.raises(DomainError):
        bessel_j(0, -1.0)
    with pytest.raises(DomainError):
        bessel_j(8, 1.0)


@pytest.mark.parametrize("twice", range(16))
def test_bessel_against_mpmath(twice):
    nu = twice / 2
    xs = np.concatenate([np.linspace(0, 50, 251), [13.99, 14.0, 14.01]])
    err = max(abs(bessel_j(BesselOrder(twice), x) - float(mpmath.besselj(nu, x))) for x in xs)
    assert err <= 1e-10


@pytest.mark.parametrize("nu", [0.5, 1.5, 2.5])
def test_half_integer_paths_agree(nu):
    xs = np.linspace(0, 40, 401)
    err = max(abs(bessel_j(nu, x) - bessel_j_half_integer(nu, x)) for x in xs)
    assert err <= 1e-10


def test_half_integer_closed_form_rejects_integer_order():
    with pytest.raises(DomainError):
        bessel_j_half_integer(1, 1.0)


@pytest.mark.parametrize("nu", [0, 0.5, 1, 1.5, 2])
def test_bessel_derivative_identity(nu):
    h = 1e-5

    def f(x):
        return x**-nu * bessel_j(nu, x)

    for x in np.linspace(0.5, 20, 40):
        fd = (f(x + h) - f(x - h)) / (2 * h)
        assert fd == pytest.approx(-(x**-nu) * bessel_j(nu + 1, x), abs=1e-6)


def test_universal_profile_examples():
    assert universal_profile(1, 0.0) == pytest.approx(1 / math.pi, rel=1e-15)
    assert universal_profile(2, 0.0) == pytest.approx(1 / (4 * math.pi), rel=1e-15)
    assert universal_profile(1, math.pi) == pytest.approx(0.0, abs=1e-16)
    for r in [0.3, 1.0, 7.0, 25.0]:
        assert universal_profile(1, r) == pytest.approx(math.sin(r) / (math.pi * r), rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("m", range(1, 6))
def test_universal_profile_origin_and_continuity(m):
    k0 = universal_profile(m, 0.0)
    ball = math.pi ** (m / 2) / math.gamma(1 + m / 2)
    assert k0 == pytest.approx(ball / (2 * math.pi) ** m, rel=1e-14)
    assert abs(universal_profile(m, 1e-6) - k0) <= 1e-8


@pytest.mark.parametrize("m", range(1, 6))
def test_universal_profile_matches_bessel_form(m):
    for s in [0.5, 3.0, 13.0, 15.0, 30.0]:
        expected = float(mpmath.besselj(m / 2, s) / (2 * mpmath.pi * s) ** (m / 2))
        assert universal_profile(m, s) == pytest.approx(expected, abs=1e-13)


def test_universal_profile_array():
    s = np.array([0.0, 1.0, 20.0])
    out = universal_profile(3, s)
    assert out.shape == (3,)
    assert out[1] == universal_profile(3, 1.0)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_profile_derivatives_at_zero_from_ball_moments(m):
    # d^j/ds^j of (2 pi)^-m int_B cos(s xi_1) at 0 is i^j (2 pi)^-m int_B xi_1^j
    for j in range(0, 13):
        if j % 2:
            assert universal_profile_derivative_at_zero(m, j) == 0.0
            continue
        k = j // 2
        moment = 2 / (j + m) * math.gamma(k + 0.5) * math.gamma(0.5) ** (m - 1) / math.gamma(k + m / 2)
        expected = (-1) ** k * moment / (2 * math.pi) ** m
        assert universal_profile_derivative_at_zero(m, j) == pytest.approx(expected, rel=1e-13)
