"""Spectral function of the Laplacian on the round sphere S^(d-1) in R^d.

Eigenvalues are n(n + d - 2) with multiplicity mu_n; the projection kernel
onto degrees <= n depends only on the geodesic distance phi through

    E_n(phi) = sum_{k<=n} (mu_k / sigma_{d-1}) P_{k,d}(cos phi),

where P_{k,d} is the Legendre polynomial of dimension d (Gegenbauer,
normalized by P(1) = 1). The Christoffel-Darboux identity collapses the sum
to the top two polynomials.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .jets import MAX_ORDER, TaylorJet
from .profile import RadialProfile
from .specfun import gamma_fn

#: spectral_cd falls back to the direct sum when 1 - cos(phi) is below this.
CD_SMALL_ANGLE = 1e-6
#: Upper edge of the rescaled-distance range where the universal limit is
#: claimed uniformly.
RESCALED_PHI_MAX = math.pi / 4


@dataclass(frozen=True)
class SphereGeometry:
    """The unit sphere S^(d-1) in R^d, d >= 3."""

    d: int

    def __post_init__(self):
        if self.d < 3:
            raise DomainError(f"sphere needs ambient dimension d >= 3, got {self.d}")

    @property
    def m(self) -> int:
        """Manifold dimension d - 1."""
        return self.d - 1

    @property
    def alpha(self) -> float:
        """Jacobi parameter (d - 3)/2 of the Legendre polynomials."""
        return (self.d - 3) / 2

    def a(self, n: int) -> float:
        """Hilb frequency n + (d - 2)/2."""
        return n + (self.d - 2) / 2


def _check_degree(n):
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")


def eigenvalue(geom: SphereGeometry, n: int) -> int:
    _check_degree(n)
    return n * (n + geom.d - 2)


def multiplicity(geom: SphereGeometry, n: int) -> int:
    """Dimension of the degree-n eigenspace, as an exact integer."""
    _check_degree(n)
    d = geom.d
    num = (2 * n + d - 2) * math.comb(n + d - 2, d - 2)
    mu, rem = divmod(num, n + d - 2)
    assert rem == 0
    return mu


def sphere_area(d: int) -> float:
    """Area sigma_{d-1} = 2 pi^(d/2) / Gamma(d/2) of S^(d-1)."""
    if d < 2:
        raise DomainError(f"sphere_area needs d >= 2, got {d}")
    return 2.0 * math.pi ** (d / 2) / gamma_fn(d / 2)


def h_norm(geom: SphereGeometry, n: int) -> float:
    """Squared norm of P_{n,d} against the weight (1 - t^2)^((d-3)/2)."""
    return sphere_area(geom.d) / (sphere_area(geom.d - 1) * multiplicity(geom, n))


def leading_ratio(geom: SphereGeometry, n: int) -> float:
    """Ratio k_n / k_{n+1} of consecutive leading coefficients."""
    _check_degree(n)
    return (n + geom.d - 2) / (2 * n + geom.d - 2)


def _as_cosines(t):
    arr = np.asarray(t, dtype=float)
    if np.any(np.abs(arr) > 1.0):
        raise DomainError("Legendre argument must lie in [-1, 1]")
    return arr


def _recurrence(geom, n, t):
    """Yield (k, P_k(t)) for k = 0..n+1 by the three-term recurrence.

    (k + d - 2) P_{k+1} = (2k + d - 2) t P_k - k P_{k-1}, P_0 = 1, P_1 = t.
    ``t`` may be an array or a TaylorJet.
    """
    d = geom.d
    prev = 1.0 + 0.0 * t
    yield 0, prev
    cur = t
    yield 1, cur
    for k in range(1, n + 1):
        prev, cur = cur, ((2 * k + d - 2) * (t * cur) - k * prev) / (k + d - 2)
        yield k + 1, cur


def _legendre_two(geom, n, t):
    """(P_n(t), P_{n+1}(t))."""
    prev = None
    for k, p in _recurrence(geom, n, t):
        if k == n + 1:
            return prev, p
        prev = p


def legendre(geom: SphereGeometry, n: int, t):
    """P_{n,d}(t) for t in [-1, 1]; scalar or array."""
    _check_degree(n)
    arr = _as_cosines(t)
    out = _legendre_two(geom, n, arr)[0]
    return float(out) if arr.ndim == 0 else out


def legendre_jet(geom: SphereGeometry, n: int, order: int, t: TaylorJet | None = None) -> TaylorJet:
    """Taylor jet of P_{n,d}(t), with t = cos(phi) expanded at phi = 0 by default.

    The recurrence runs in truncated power-series arithmetic, so the jet
    carries exact phi-derivatives of P_{n,d}(cos phi).
    """
    _check_degree(n)
    if not 0 <= order <= MAX_ORDER:
        raise DomainError(f"jet order must be in 0..{MAX_ORDER}, got {order}")
    if t is None:
        t = TaylorJet.variable(order).cos()
    return _legendre_two(geom, n, t)[0]


def _neumaier_add(total, comp, x):
    s = total + x
    big = np.abs(total) >= np.abs(x)
    comp = comp + np.where(big, (total - s) + x, (x - s) + total)
    return s, comp


def spectral_direct(geom: SphereGeometry, n: int, t):
    """E_n as the compensated addition-formula sum over degrees 0..n.

    ``t`` is the cosine of the geodesic distance; scalar or array.
    """
    _check_degree(n)
    arr = _as_cosines(t)
    sigma = sphere_area(geom.d)
    if arr.ndim == 0:
        terms = [multiplicity(geom, k) / sigma * p for k, p in _recurrence(geom, n, float(arr)) if k <= n]
        return math.fsum(terms)
    total = np.zeros(arr.shape)
    comp = np.zeros(arr.shape)
    for k, p in _recurrence(geom, n, arr):
        if k > n:
            break
        total, comp = _neumaier_add(total, comp, (multiplicity(geom, k) / sigma) * p)
    out = total + comp
    return float(out) if arr.ndim == 0 else out


def spectral_cd(geom: SphereGeometry, n: int, phi):
    """E_n(phi) from the Christoffel-Darboux closed form.

    Points with 1 - cos(phi) < CD_SMALL_ANGLE are routed to the direct sum.
    """
    _check_degree(n)
    arr = np.asarray(phi, dtype=float)
    if np.any(arr < 0) or np.any(arr > math.pi):
        raise DomainError("geodesic distance must lie in [0, pi]")
    one_minus_t = 2.0 * np.sin(0.5 * arr) ** 2
    t = np.clip(np.cos(arr), -1.0, 1.0)
    out = np.empty(arr.shape)
    small = one_minus_t < CD_SMALL_ANGLE
    if np.any(small):
        out[small] = spectral_direct(geom, n, t[small])
    if not np.all(small):
        big = ~small
        p_n, p_n1 = _legendre_two(geom, n, t[big])
        scale = multiplicity(geom, n) / sphere_area(geom.d) * leading_ratio(geom, n)
        out[big] = scale * (p_n1 - p_n) / (-one_minus_t[big])
    return float(out) if arr.ndim == 0 else out


def _radius(geom, n):
    if n < 1:
        raise DomainError("rescaling needs n >= 1 (r_0 = 0)")
    return math.sqrt(eigenvalue(geom, n))


def rescaled_values(geom: SphereGeometry, n: int, phis):
    """r_n^-(d-1) E_n(phi / r_n) with r_n = sqrt(lambda_n), on any phi <= pi r_n."""
    r = _radius(geom, n)
    return spectral_cd(geom, n, np.asarray(phis, dtype=float) / r) / r ** (geom.d - 1)


def rescaled_profile(geom: SphereGeometry, n: int, phis) -> RadialProfile:
    """Rescaled spectral function on a grid of rescaled distances in [0, pi/4]."""
    phis = np.asarray(phis, dtype=float)
    if np.any(phis > RESCALED_PHI_MAX):
        raise DomainError("rescaled distances must not exceed pi/4")
    return RadialProfile("sphere", n, phis, rescaled_values(geom, n, phis))


def rescaled_jet(geom: SphereGeometry, n: int, order: int) -> TaylorJet:
    """Taylor jet at 0 of the rescaled spectral function in the rescaled distance."""
    r = _radius(geom, n)
    if not 0 <= order <= MAX_ORDER:
        raise DomainError(f"jet order must be in 0..{MAX_ORDER}, got {order}")
    t = TaylorJet.variable(order).cos()
    sigma = sphere_area(geom.d)
    total = TaylorJet.constant(0.0, order)
    for k, p in _recurrence(geom, n, t):
        if k > n:
            break
        total = total + (multiplicity(geom, k) / sigma) * p
    # phi -> phi / r scales the k-th coefficient by r^-k
    scale = r ** -(geom.d - 1 + np.arange(order + 1, dtype=float))
    return TaylorJet(0.0, total.coeffs * scale)
