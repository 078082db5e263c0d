import math

import numpy as np
import pytest

from spectral_universality.errors import DomainError, FitError
from spectral_universality.experiments import (
    ConvergenceReport,
    converge_universality,
    default_phi_grid,
    diagonal_derivatives,
    fit_growth,
    growth_fit,
    hilb_approx,
    hilb_errors,
    limit_derivatives,
    loglog_fit,
)
from spectral_universality.specfun import bessel_j
from spectral_universality.sphere import SphereGeometry, eigenvalue, legendre, multiplicity, rescaled_values, sphere_area
from spectral_universality.torus import TorusGeometry

S2 = SphereGeometry(3)

# max over n in {100..1600} of |d^j E_n(0) - d^j K(0)| sqrt(n), rounded up; regression guards
DERIVATIVE_LIMIT_CONSTANTS = {
    3: {0: 0.0080, 2: 0.0040, 4: 0.0030, 6: 0.0025},
    4: {0: 0.0026, 2: 0.00085, 4: 0.00051, 6: 0.00036},
}


def test_hilb_zero_order_form():
    for n, theta in [(50, 0.02), (400, 0.001)]:
        a = n + 0.5
        expected = math.sqrt(theta / math.sin(theta)) * bessel_j(0, a * theta)
        assert hilb_approx(S2, n, theta) == pytest.approx(expected, rel=1e-14)


def test_hilb_examples():
    assert hilb_approx(S2, 100, 0.01) == pytest.approx(legendre(S2, 100, math.cos(0.01)), abs=1e-4)
    g5 = SphereGeometry(5)
    assert hilb_approx(g5, 200, 0.005) == pytest.approx(legendre(g5, 200, math.cos(0.005)), abs=1e-4)


def test_hilb_domain():
    with pytest.raises(DomainError):
        hilb_approx(S2, 10, 0.0)
    with pytest.raises(DomainError):
        hilb_approx(S2, 10, 2.0)


@pytest.mark.parametrize("d", [3, 5, 7])
@pytest.mark.parametrize("phi", [0.05, 0.1, 0.2])
def test_hilb_error_decay(d, phi):
    levels = [50, 100, 200, 400, 800, 1600]
    errs = hilb_errors(SphereGeometry(d), levels, phi)
    slope, _ = loglog_fit(levels, errs)
    assert slope <= -1


def test_hilb_exact_for_three_sphere():
    # alpha = 1/2: the approximation is sin(a theta) / (a sin theta) = P_{n,4}(cos theta)
    g = SphereGeometry(4)
    errs = hilb_errors(g, [50, 200, 1600], 0.1)
    assert np.all(errs <= 1e-10)


def test_loglog_fit_exact_power():
    levels = [10, 20, 40, 80]
    slope, intercept = loglog_fit(levels, [3.0 * l**-1.5 for l in levels])
    assert slope == pytest.approx(-1.5)
    assert intercept == pytest.approx(math.log(3.0))


def test_loglog_fit_degenerate():
    with pytest.raises(FitError):
        loglog_fit([10], [0.1])
    with pytest.raises(FitError):
        loglog_fit([10, 20], [0.1, 0.0])


def test_convergence_needs_two_levels():
    with pytest.raises(FitError):
        converge_universality(S2, [100])


def test_convergence_rejects_grid_outside_range():
    with pytest.raises(DomainError):
        converge_universality(S2, [10, 20], grid=[0.1, 1.0])


def test_convergence_diagonal_envelope():
    report = converge_universality(S2, [50, 100, 200], grid=[0.0])
    np.testing.assert_allclose(report.sup_errors, [1 / (4 * math.pi * n) for n in (50, 100, 200)], rtol=1e-12)
    assert report.fitted_slope == pytest.approx(-1.0, abs=1e-9)
    assert isinstance(report, ConvergenceReport)


def test_convergence_threads_identical():
    grid = default_phi_grid(32)
    a = converge_universality(SphereGeometry(4), [20, 40, 80], grid)
    b = converge_universality(SphereGeometry(4), [20, 40, 80], grid, threads=3)
    np.testing.assert_array_equal(a.sup_errors, b.sup_errors)


def test_torus_convergence_trend_small():
    report = converge_universality(TorusGeometry(2), [1e2, 1e3, 1e4], np.linspace(0, 4, 16))
    assert report.sup_errors[-1] <= report.sup_errors[0] / 2


def test_diagonal_derivatives_structure():
    for n in (10, 100):
        dd = diagonal_derivatives(S2, n, 12)
        assert np.all(dd[1::2] == 0.0)
        assert dd[0] == pytest.approx((n + 1) / (4 * math.pi * n), rel=1e-13)


@pytest.mark.parametrize("d", [3, 4, 6])
def test_second_derivative_exact(d):
    # P_k(cos psi) = 1 - lambda_k psi^2 / (2 (d-1)) + O(psi^4)
    g = SphereGeometry(d)
    n = 37
    r2 = eigenvalue(g, n)
    total = sum(multiplicity(g, k) * eigenvalue(g, k) for k in range(n + 1))
    expected = -total / (sphere_area(d) * (d - 1)) / r2 ** ((d + 1) / 2)
    assert diagonal_derivatives(g, n, 2)[2] == pytest.approx(expected, rel=1e-12)


def test_diagonal_derivatives_against_finite_differences():
    n = 60
    h = 1e-2
    f = lambda s: rescaled_values(S2, n, s)
    fd2 = (f(h) - 2 * f(0.0) + f(h)) / h**2
    assert diagonal_derivatives(S2, n, 2)[2] == pytest.approx(fd2, rel=1e-4)


def test_diagonal_derivatives_order_check():
    with pytest.raises(DomainError):
        diagonal_derivatives(S2, 10, 13)
    with pytest.raises(DomainError):
        diagonal_derivatives(S2, 10, 14)


@pytest.mark.parametrize("d", [3, 4])
def test_even_derivative_limits(d):
    lim = limit_derivatives(d - 1, 6)
    for n in (100, 200, 400, 800, 1600):
        dd = diagonal_derivatives(SphereGeometry(d), n, 6)
        for j, c in DERIVATIVE_LIMIT_CONSTANTS[d].items():
            assert abs(dd[j] - lim[j]) <= c / math.sqrt(n)


def test_second_derivative_limit_value():
    # coefficient of s^2 in K_2 is -1/(8 (4 pi))... times 2
    assert limit_derivatives(2, 2)[2] == pytest.approx(-2 / (8 * 4 * math.pi), rel=1e-15)


def test_growth_fit_degenerate():
    with pytest.raises(FitError):
        fit_growth(range(5), np.zeros(5))
    with pytest.raises(FitError):
        fit_growth(range(3), [1.0, 0.0, 0.0])


def test_growth_fit_minimal_and_tight():
    fit = growth_fit(S2, 100, 12)
    bound = fit.bound()
    assert np.all(fit.magnitudes <= bound * (1 + 1e-12))
    assert fit.K_fit == pytest.approx(rescaled_values(S2, 100, 0.0), rel=1e-13)
    tight = np.isclose(fit.magnitudes[1:], bound[1:], rtol=1e-12)
    assert tight.any()


def test_growth_fit_stable_in_n():
    a, b = growth_fit(S2, 100), growth_fit(S2, 800)
    assert 0.5 <= a.T_fit / b.T_fit <= 2
