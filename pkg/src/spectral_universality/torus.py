"""Spectral function of a flat cubic torus R^m / (side Z)^m by lattice sums.

The eigenfunctions are plane waves e^{i k.x} with k in (2 pi / side) Z^m and
eigenvalue |k|^2, so

    E_L(u) = side^(-m) * sum_{|k|^2 <= L} cos(k.u).
"""
from __future__ import annotations

import functools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResourceError
from .profile import RadialProfile

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class TorusGeometry:
    m: int
    side: float = 2 * math.pi

    def __post_init__(self):
        if self.m not in (1, 2, 3):
            raise DomainError(f"torus dimension must be 1, 2 or 3, got {self.m}")
        if not self.side > 0:
            raise DomainError(f"side length must be positive, got {self.side}")

    @property
    def frequency(self) -> float:
        """Spacing 2 pi / side of the dual lattice."""
        return 2 * math.pi / self.side

    @property
    def volume(self) -> float:
        return self.side**self.m


def _integer_radius2(geom, L):
    # |k|^2 <= L  <=>  |j|^2 <= L (side / 2 pi)^2 for integer j
    return math.floor(L / geom.frequency**2)


def lattice_count(m: int, r2: int) -> int:
    """Number of integer points j in Z^m with |j|^2 <= r2."""
    if r2 < 0:
        return 0
    if m == 1:
        return 2 * math.isqrt(r2) + 1
    top = math.isqrt(r2)
    return sum(lattice_count(m - 1, r2 - j * j) for j in range(-top, top + 1))


@functools.lru_cache(maxsize=4)
def _lattice(m, r2):
    """Integer points with |j|^2 <= r2, ordered by shell then lexicographically."""
    top = math.isqrt(r2)
    axis = np.arange(-top, top + 1)
    if m == 1:
        pts = axis[:, None]
    else:
        rows = []
        for head in (np.stack(np.meshgrid(*([axis] * (m - 1)), indexing="ij"), -1).reshape(-1, m - 1)):
            rest = r2 - int(head @ head)
            if rest < 0:
                continue
            w = math.isqrt(rest)
            tail = np.arange(-w, w + 1)
            block = np.empty((len(tail), m), dtype=np.int64)
            block[:, :-1] = head
            block[:, -1] = tail
            rows.append(block)
        pts = np.concatenate(rows)
    norm2 = (pts * pts).sum(axis=1)
    order = np.lexsort(tuple(pts[:, i] for i in range(m - 1, -1, -1)) + (norm2,))
    pts = pts[order].astype(float)
    pts.flags.writeable = False
    return pts


def lattice_points(geom: TorusGeometry, L: float, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Frequencies k with |k|^2 <= L as integer multiples of the lattice spacing."""
    if L < 0:
        raise DomainError(f"spectral level must be >= 0, got {L}")
    r2 = _integer_radius2(geom, L)
    count = lattice_count(geom.m, r2)
    if count > budget:
        raise ResourceError(f"{count} lattice points exceed the budget of {budget}")
    return _lattice(geom.m, r2)


def _lattice_sum(geom, pts, u):
    # cos(k.u) with k = (2 pi / side) j, phase kept as j.u / side to limit rounding
    return math.fsum(np.cos(2 * math.pi * (pts @ u / geom.side))) / geom.volume


def _as_point(geom, u):
    u = np.asarray(u, dtype=float).reshape(-1)
    if u.shape != (geom.m,):
        raise DomainError(f"displacement must have length {geom.m}")
    return u


def torus_spectral(geom: TorusGeometry, L: float, u, budget: int = DEFAULT_BUDGET) -> float:
    """E_L at displacement u, as an exactly rounded sum over the lattice ball."""
    pts = lattice_points(geom, L, budget)
    return _lattice_sum(geom, pts, _as_point(geom, u))


def torus_spectral_many(geom: TorusGeometry, L: float, us, budget: int = DEFAULT_BUDGET, threads: int = 1):
    """E_L at each row of ``us``; the lattice is enumerated once."""
    pts = lattice_points(geom, L, budget)
    us = [_as_point(geom, u) for u in np.asarray(us, dtype=float).reshape(-1, geom.m)]
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return np.array(list(pool.map(lambda u: _lattice_sum(geom, pts, u), us)))
    return np.array([_lattice_sum(geom, pts, u) for u in us])


def chart_bound(geom: TorusGeometry, L: float) -> float:
    """Largest rescaled distance kept inside the injectivity chart."""
    return math.sqrt(L) * geom.side / 4


def rescaled_torus_profile(
    geom: TorusGeometry, L: float, direction, ss, budget: int = DEFAULT_BUDGET, threads: int = 1
) -> RadialProfile:
    """L^(-m/2) E_L((s / sqrt(L)) direction) along a unit direction."""
    if not L > 0:
        raise DomainError(f"rescaling needs L > 0, got {L}")
    direction = _as_point(geom, direction)
    if abs(np.linalg.norm(direction) - 1.0) > 1e-12:
        raise DomainError("direction must be a unit vector")
    ss = np.asarray(ss, dtype=float)
    if np.any(ss > chart_bound(geom, L)):
        raise DomainError(f"rescaled distances must not exceed sqrt(L) side / 4 = {chart_bound(geom, L)}")
    root = math.sqrt(L)
    us = (ss[:, None] / root) * direction[None, :]
    values = torus_spectral_many(geom, L, us, budget, threads) / L ** (0.5 * geom.m)
    return RadialProfile("torus", L, ss, values)
