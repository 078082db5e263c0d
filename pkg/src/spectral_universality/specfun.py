"""Special functions: Gamma, double factorials, Bessel J of integer and
half-integer order, and the universal Bessel profile

    K_m(s) = (2 pi s)^(-m/2) J_{m/2}(s),

which is also the unit-ball Fourier integral (2 pi)^(-m) * int_{|xi|<=1} e^{i xi.u}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

#: Below this argument J is summed from its power series, above it from the
#: Hankel asymptotic expansion.
SERIES_CROSSOVER = 14.0
#: Largest supported order, as twice the order.
MAX_TWICE_ORDER = 15

_SERIES_RTOL = 1e-18


@dataclass(frozen=True)
class BesselOrder:
    """Order nu = twice_order / 2, so integer and half-integer orders are exact."""

    twice_order: int

    def __post_init__(self):
        if self.twice_order < 0:
            raise DomainError(f"Bessel order must be nonnegative, got {self.twice_order}/2")

    @classmethod
    def of(cls, nu) -> "BesselOrder":
        if isinstance(nu, BesselOrder):
            return nu
        twice = 2 * nu
        if twice != int(twice):
            raise DomainError(f"only integer and half-integer orders are supported, got {nu}")
        return cls(int(twice))

    @property
    def value(self) -> float:
        return self.twice_order / 2

    @property
    def is_half_integer(self) -> bool:
        return self.twice_order % 2 == 1


def gamma_fn(x: float) -> float:
    """Gamma function for x > 0."""
    if not x > 0:
        raise DomainError(f"gamma_fn requires x > 0, got {x}")
    return math.gamma(x)


def double_factorial(k: int) -> int:
    """k!! = k (k-2) (k-4) ..., with (-1)!! = 0!! = 1."""
    if k < -1:
        raise DomainError(f"double factorial undefined for k = {k}")
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def _bessel_series(nu: float, x: float) -> float:
    half = 0.5 * x
    term = half**nu / math.gamma(nu + 1.0)
    total = term
    k = 0
    while True:
        k += 1
        term *= -(half * half) / (k * (k + nu))
        total += term
        if abs(term) <= _SERIES_RTOL * abs(total) or term == 0.0:
            return total


def _bessel_hankel(nu: float, x: float) -> float:
    # a_k(nu) / x^k; terminates for half-integer nu, otherwise truncated
    # before the smallest term.
    mu = 4.0 * nu * nu
    terms = [1.0]
    for k in range(1, 80):
        t = terms[-1] * (mu - (2 * k - 1) ** 2) / (8.0 * k * x)
        if t == 0.0:
            break
        terms.append(t)
    else:
        smallest = min(range(len(terms)), key=lambda i: abs(terms[i]))
        terms = terms[:smallest]
    p = q = 0.0
    for k, t in enumerate(terms):
        r = k % 4
        if r == 0:
            p += t
        elif r == 1:
            q += t
        elif r == 2:
            p -= t
        else:
            q -= t
    w = x - (0.5 * nu + 0.25) * math.pi
    return math.sqrt(2.0 / (math.pi * x)) * (p * math.cos(w) - q * math.sin(w))


def bessel_j(nu, x: float) -> float:
    """Bessel function of the first kind J_nu(x) for x >= 0.

    ``nu`` is a :class:`BesselOrder` or a number that is a multiple of 1/2,
    at most 15/2.
    """
    order = BesselOrder.of(nu)
    if order.twice_order > MAX_TWICE_ORDER:
        raise DomainError(f"order {order.value} exceeds the supported maximum 15/2")
    if x < 0:
        raise DomainError(f"bessel_j requires x >= 0, got {x}")
    v = order.value
    if x == 0.0:
        return 1.0 if order.twice_order == 0 else 0.0
    if x < SERIES_CROSSOVER:
        return _bessel_series(v, x)
    return _bessel_hankel(v, x)


def bessel_j_half_integer(nu, x: float) -> float:
    """J_nu(x) for half-integer nu from the elementary closed forms.

    Starts from J_{1/2} and J_{3/2} (finite sin/cos combinations) and climbs
    with the upward three-term recurrence. Independent of :func:`bessel_j`.
    Loses accuracy for x well below nu.
    """
    order = BesselOrder.of(nu)
    if not order.is_half_integer:
        raise DomainError(f"closed form needs a half-integer order, got {order.value}")
    if x < 0:
        raise DomainError(f"bessel_j_half_integer requires x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    n = order.twice_order // 2
    s, c = math.sin(x), math.cos(x)
    j_prev = s / x
    if n == 0:
        jn = j_prev
    else:
        jn = s / (x * x) - c / x
        for k in range(1, n):
            j_prev, jn = jn, (2 * k + 1) / x * jn - j_prev
    return math.sqrt(2.0 * x / math.pi) * jn


def _universal_scalar(m: int, s: float) -> float:
    half = 0.5 * m
    if s < SERIES_CROSSOVER:
        # (2 pi s)^(-m/2) (s/2)^(m/2) = (4 pi)^(-m/2); sum the reduced series
        q = 0.25 * s * s
        term = 1.0 / math.gamma(1.0 + half)
        total = term
        k = 0
        while True:
            k += 1
            term *= -q / (k * (k + half))
            total += term
            if abs(term) <= _SERIES_RTOL * abs(total) or term == 0.0:
                break
        return total / (4.0 * math.pi) ** half
    return bessel_j(BesselOrder(m), s) / (2.0 * math.pi * s) ** half


def universal_profile(m: int, s):
    """Universal limit profile K_m(s) = (2 pi s)^(-m/2) J_{m/2}(s).

    Continuous at s = 0 with K_m(0) = vol(B_1^m) / (2 pi)^m. Accepts a scalar
    or an array of distances.
    """
    if m < 1:
        raise DomainError(f"dimension must be >= 1, got {m}")
    if m > MAX_TWICE_ORDER:
        raise DomainError(f"dimension {m} exceeds the supported maximum {MAX_TWICE_ORDER}")
    arr = np.asarray(s, dtype=float)
    if np.any(arr < 0):
        raise DomainError("universal_profile requires s >= 0")
    if arr.ndim == 0:
        return _universal_scalar(m, float(arr))
    return np.array([_universal_scalar(m, float(v)) for v in arr.ravel()]).reshape(arr.shape)


def universal_profile_derivative_at_zero(m: int, j: int) -> float:
    """j-th derivative of K_m at s = 0, read off its Bessel power series.

    K_m(s) = (4 pi)^(-m/2) sum_k (-1)^k (s/2)^(2k) / (k! Gamma(k + 1 + m/2)),
    so odd derivatives vanish and the order-2k derivative is
    (-1)^k (2k)! / (4^k k! Gamma(k + 1 + m/2)) (4 pi)^(-m/2).
    """
    if j < 0:
        raise DomainError(f"derivative order must be >= 0, got {j}")
    if j % 2:
        return 0.0
    k = j // 2
    coeff = (-1) ** k / (4.0**k * math.factorial(k) * math.gamma(k + 1 + 0.5 * m))
    return math.factorial(j) * coeff / (4.0 * math.pi) ** (0.5 * m)
