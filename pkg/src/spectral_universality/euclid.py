"""Flat-space spectral kernel and the diagonal derivative coefficients.

On R^m the spectral projector onto eigenvalues <= L has kernel

    E_L(x, y) = (2 pi)^(-m) * int_{|xi|^2 <= L} e^{i xi.(x - y)} dxi,

a function of r = |x - y| only. Its mixed derivatives on the diagonal are
moments of the unit ball, which gives an independent route to the closed-form
coefficients C_{alpha,beta}.
"""
from __future__ import annotations

import functools
import math
from typing import Sequence

import numpy as np

from .errors import DomainError
from .specfun import double_factorial, gamma_fn, universal_profile

#: Midpoint cells per axis for the ball quadrature, indexed by dimension.
QUADRATURE_CELLS = {1: 4096, 2: 4096, 3: 360}
QUADRATURE_MAX_RADIUS = 20.0


def multi_index(entries: Sequence[int]) -> tuple[int, ...]:
    """Validate a multi-index and return it as a tuple."""
    out = tuple(int(e) for e in entries)
    if any(e < 0 for e in out):
        raise DomainError(f"multi-index entries must be >= 0, got {out}")
    return out


def flat_kernel(m: int, L: float, r):
    """Flat-space spectral kernel at distance r, L^(m/2) K_m(sqrt(L) r)."""
    if not L > 0:
        raise DomainError(f"flat_kernel needs L > 0, got {L}")
    root = math.sqrt(L)
    return L ** (0.5 * m) * universal_profile(m, root * np.asarray(r, dtype=float))


@functools.lru_cache(maxsize=None)
def _ball_grid(m):
    """Cell centers and, for each line along the last axis, the half-width
    (in cells) of the run of centers inside the closed unit ball."""
    n = QUADRATURE_CELLS[m]
    h = 2.0 / n
    centers = -1.0 + h * (np.arange(n) + 0.5)
    if m == 1:
        return centers, None
    outer = np.meshgrid(*([centers] * (m - 1)), indexing="ij")
    r2 = sum(c * c for c in outer)
    # cells along the last axis are symmetric about 0, so each inside run is
    # centered and its length is twice the count on the positive side
    pos = centers[n // 2 :]
    half = ((r2[..., None] + pos * pos) <= 1.0).sum(axis=-1)
    return centers, half


def ball_quadrature(m: int, u) -> float:
    """(2 pi)^(-m) * int_{B_1^m} cos(xi.u) dxi by a midpoint tensor grid.

    Cells whose centers lie in the closed unit ball are kept. The sine part of
    e^{i xi.u} integrates to zero by symmetry and is not evaluated. Along the
    last axis the inside cells form one centered run per line, so
    sum_k cos(a + z_k u) = cos(a) sum_k cos(z_k u) and the run sums come from
    prefix sums; the grid sum is the same, at O(n^(m-1)) cost per point.
    """
    if m not in QUADRATURE_CELLS:
        raise DomainError(f"ball_quadrature supports m in 1..3, got {m}")
    u = np.asarray(u, dtype=float).reshape(-1)
    if u.shape != (m,):
        raise DomainError(f"u must have length {m}")
    if np.linalg.norm(u) > QUADRATURE_MAX_RADIUS:
        raise DomainError(f"|u| must be <= {QUADRATURE_MAX_RADIUS}")
    centers, half = _ball_grid(m)
    n = len(centers)
    h = 2.0 / n
    norm = h**m / (2.0 * math.pi) ** m
    if m == 1:
        return math.fsum(np.cos(centers * u[0])) * norm
    # the last-axis sum is even in the run, so only cosines survive
    last = np.cos(centers[n // 2 :] * u[-1])
    run_cos = 2.0 * np.concatenate(([0.0], np.cumsum(last)))[half]
    outer = np.meshgrid(*([centers] * (m - 1)), indexing="ij")
    phase = sum(c * uk for c, uk in zip(outer, u[:-1]))
    terms = np.cos(phase) * run_cos
    # per-slab sums along the first axis, reduced in slab order
    return math.fsum(terms.reshape(n, -1).sum(axis=1)) * norm


def ball_moment(m: int, gamma: Sequence[int]) -> float:
    """int_{B_1^m} xi^(2 gamma) dxi in closed form."""
    gamma = multi_index(gamma)
    if len(gamma) != m:
        raise DomainError(f"multi-index length {len(gamma)} does not match m = {m}")
    g = sum(gamma)
    prod = math.prod(gamma_fn(gj + 0.5) for gj in gamma)
    return 2.0 / (2 * g + m) * prod / gamma_fn(g + 0.5 * m)


def diagonal_coefficient(m: int, alpha: Sequence[int], beta: Sequence[int]) -> float:
    """Leading coefficient C_{alpha,beta} of the diagonal derivative
    d_x^alpha d_y^beta E_L(x, y)|_{x=y} ~ L^((m+|alpha|+|beta|)/2) C_{alpha,beta}.
    """
    alpha, beta = multi_index(alpha), multi_index(beta)
    if len(alpha) != m or len(beta) != m:
        raise DomainError(f"multi-indices must have length m = {m}")
    if any((a - b) % 2 for a, b in zip(alpha, beta)):
        return 0.0
    a, b = sum(alpha), sum(beta)
    half = (a + b) // 2
    sign = -1.0 if ((a - b) // 2) % 2 else 1.0
    prod = math.prod(double_factorial(ai + bi - 1) for ai, bi in zip(alpha, beta))
    denom = (4.0 * math.pi) ** (0.5 * m) * 2.0**half * gamma_fn(1 + 0.5 * m + half)
    return sign * prod / denom


def diagonal_coefficient_oracle(m: int, alpha: Sequence[int], beta: Sequence[int]) -> float:
    """C_{alpha,beta} by differentiating under the integral:
    i^|alpha| (-i)^|beta| (2 pi)^(-m) int_{B_1} xi^(alpha+beta) dxi.
    """
    alpha, beta = multi_index(alpha), multi_index(beta)
    if len(alpha) != m or len(beta) != m:
        raise DomainError(f"multi-indices must have length m = {m}")
    total = [a + b for a, b in zip(alpha, beta)]
    if any(t % 2 for t in total):
        return 0.0
    phase = 1j ** sum(alpha) * (-1j) ** sum(beta)
    value = phase * ball_moment(m, [t // 2 for t in total]) / (2.0 * math.pi) ** m
    return value.real
