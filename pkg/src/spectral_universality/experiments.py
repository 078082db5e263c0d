"""Numerical checks of the universal limit of rescaled spectral functions.

* Hilb-type Bessel approximation of the Legendre polynomials near t = 1.
* Sup-norm convergence of rescaled profiles to K_m with a log-log rate fit.
* Exact diagonal derivatives of the rescaled sphere kernel and their limits.
* Minimal constants (K, T) in |d^j E(0)| <= K T^j j!.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, FitError
from .specfun import bessel_j, gamma_fn, universal_profile, universal_profile_derivative_at_zero
from .sphere import RESCALED_PHI_MAX, SphereGeometry, legendre, rescaled_jet, rescaled_values
from .torus import TorusGeometry, chart_bound, torus_spectral_many

#: Lower edge of the default rescaled-distance grid.
PHI_MIN = 1e-3
MAX_DERIVATIVE_ORDER = 12


@dataclass(frozen=True)
class ConvergenceReport:
    levels: np.ndarray
    sup_errors: np.ndarray
    fitted_slope: float
    fitted_intercept: float

    def rows(self):
        return list(zip(self.levels.tolist(), self.sup_errors.tolist()))


@dataclass(frozen=True)
class GrowthFit:
    """Minimal constants with magnitudes[j] <= K_fit * T_fit**j * j!.

    K_fit is pinned by the order-0 magnitude, then T_fit is the smallest
    rate that covers every other order.
    """

    orders: np.ndarray
    magnitudes: np.ndarray
    K_fit: float
    T_fit: float

    def bound(self):
        j = self.orders
        return self.K_fit * self.T_fit ** j * np.array([math.factorial(int(k)) for k in j], dtype=float)


def hilb_approx(geom: SphereGeometry, n: int, theta: float) -> float:
    """Leading Hilb-type approximation of P_{n,d}(cos theta),

    Gamma(a+1) (theta / sin theta)^(1/2) (2 theta / sin theta)^a (N theta)^(-a) J_a(N theta),

    with a = (d-3)/2 and N = n + (d-2)/2.
    """
    if n < 1:
        raise DomainError(f"hilb_approx needs n >= 1, got {n}")
    if not 0 < theta <= math.pi / 2:
        raise DomainError(f"theta must lie in (0, pi/2], got {theta}")
    a = geom.alpha
    x = geom.a(n) * theta
    ratio = theta / math.sin(theta)
    return gamma_fn(a + 1) * math.sqrt(ratio) * (2 * ratio) ** a * x ** (-a) * bessel_j(a, x)


def loglog_fit(levels, errors) -> tuple[float, float]:
    """Ordinary least-squares slope and intercept of log(errors) on log(levels)."""
    levels = np.asarray(levels, dtype=float)
    errors = np.asarray(errors, dtype=float)
    if len(levels) < 2:
        raise FitError("a rate fit needs at least two levels")
    if np.any(errors <= 0) or np.any(levels <= 0):
        raise FitError("a log-log fit needs positive levels and errors")
    slope, intercept = np.polyfit(np.log(levels), np.log(errors), 1)
    return float(slope), float(intercept)


def default_phi_grid(samples: int = 256) -> np.ndarray:
    return np.linspace(PHI_MIN, RESCALED_PHI_MAX, samples)


def converge_universality(
    target, levels: Sequence[float], grid=None, direction=None, threads: int = 1
) -> ConvergenceReport:
    """Sup-norm distance between rescaled profiles and K_m, level by level.

    ``target`` is a SphereGeometry (levels are degrees n, grid in [0, pi/4])
    or a TorusGeometry (levels are cutoffs L, grid of rescaled distances
    along ``direction``, the first axis by default).
    """
    levels = np.asarray(levels, dtype=float)
    if len(levels) < 2:
        raise FitError("convergence needs at least two levels")
    if np.any(np.diff(levels) <= 0):
        raise DomainError("levels must be strictly increasing")
    grid = default_phi_grid() if grid is None else np.asarray(grid, dtype=float)
    if np.any(grid < 0):
        raise DomainError("distances must be nonnegative")

    if isinstance(target, SphereGeometry):
        if np.any(grid > RESCALED_PHI_MAX):
            raise DomainError("sphere grid must lie in [0, pi/4]")
        limit = universal_profile(target.m, grid)

        def sup_error(level):
            return float(np.max(np.abs(rescaled_values(target, int(level), grid) - limit)))

    elif isinstance(target, TorusGeometry):
        if direction is None:
            direction = np.eye(target.m)[0]
        direction = np.asarray(direction, dtype=float)
        if abs(np.linalg.norm(direction) - 1.0) > 1e-12:
            raise DomainError("direction must be a unit vector")
        if np.any(grid > chart_bound(target, levels[0])):
            raise DomainError("grid leaves the injectivity chart at the lowest level")
        limit = universal_profile(target.m, grid)

        def sup_error(level):
            us = (grid[:, None] / math.sqrt(level)) * direction
            values = torus_spectral_many(target, level, us) / level ** (0.5 * target.m)
            return float(np.max(np.abs(values - limit)))

    else:
        raise TypeError(f"unsupported target {target!r}")

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            errors = np.array(list(pool.map(sup_error, levels)))
    else:
        errors = np.array([sup_error(level) for level in levels])
    slope, intercept = loglog_fit(levels, errors)
    return ConvergenceReport(levels, errors, slope, intercept)


def _check_max_order(max_order):
    if not 0 <= max_order <= MAX_DERIVATIVE_ORDER or max_order % 2:
        raise DomainError(f"max_order must be an even integer in 0..{MAX_DERIVATIVE_ORDER}")


def diagonal_derivatives(geom: SphereGeometry, n: int, max_order: int) -> np.ndarray:
    """Exact derivatives d^j/dphi^j of the rescaled sphere kernel at 0, j = 0..max_order."""
    _check_max_order(max_order)
    return rescaled_jet(geom, n, max_order).derivatives()


def limit_derivatives(m: int, max_order: int) -> np.ndarray:
    """Derivatives of K_m at 0, j = 0..max_order."""
    return np.array([universal_profile_derivative_at_zero(m, j) for j in range(max_order + 1)])


def fit_growth(orders, magnitudes) -> GrowthFit:
    """Minimal (K, T) with magnitudes[j] <= K T^j j!, K fixed by order 0."""
    orders = np.asarray(orders, dtype=int)
    magnitudes = np.abs(np.asarray(magnitudes, dtype=float))
    if len(orders) == 0 or orders[0] != 0:
        raise FitError("growth fit needs the order-0 magnitude first")
    K = magnitudes[0]
    if not K > 0:
        raise FitError("order-0 magnitude is zero; the bound has no scale")
    rates = [
        (mag / (K * math.factorial(int(j)))) ** (1.0 / j)
        for j, mag in zip(orders[1:], magnitudes[1:])
        if mag > 0
    ]
    if not rates:
        raise FitError("all higher-order magnitudes vanish; no growth rate to fit")
    return GrowthFit(orders, magnitudes, float(K), float(max(rates)))


def growth_fit(geom: SphereGeometry, n: int, max_order: int = MAX_DERIVATIVE_ORDER) -> GrowthFit:
    derivs = diagonal_derivatives(geom, n, max_order)
    return fit_growth(np.arange(max_order + 1), derivs)


def hilb_errors(geom: SphereGeometry, levels: Sequence[int], phi: float) -> np.ndarray:
    """|P_{n,d}(cos theta) - hilb_approx| at theta = phi / a_n for each n."""
    out = []
    for n in levels:
        theta = phi / geom.a(n)
        out.append(abs(legendre(geom, n, math.cos(theta)) - hilb_approx(geom, n, theta)))
    return np.array(out)
