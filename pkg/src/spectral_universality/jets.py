"""Truncated Taylor series ("jets") for exact derivatives through recurrences."""
from __future__ import annotations

import math

import numpy as np

MAX_ORDER = 16


class TaylorJet:
    """Coefficients of (x - center)^k, k = 0..order, with arithmetic truncated
    at ``order``.

    Jets combine only with jets of the same center and order, or with scalars.
    """

    __slots__ = ("center", "coeffs")

    def __init__(self, center, coeffs):
        coeffs = np.array(coeffs, dtype=float)
        if coeffs.ndim != 1 or len(coeffs) < 1:
            raise ValueError("a jet needs at least one coefficient")
        if len(coeffs) - 1 > MAX_ORDER:
            raise ValueError(f"jet order {len(coeffs) - 1} exceeds the cap {MAX_ORDER}")
        self.center = float(center)
        self.coeffs = coeffs

    @classmethod
    def constant(cls, value, order, center=0.0):
        c = np.zeros(order + 1)
        c[0] = value
        return cls(center, c)

    @classmethod
    def variable(cls, order, center=0.0):
        """The identity function x, expanded at ``center``."""
        c = np.zeros(order + 1)
        c[0] = center
        if order >= 1:
            c[1] = 1.0
        return cls(center, c)

    @property
    def order(self):
        return len(self.coeffs) - 1

    def _check(self, other):
        if other.center != self.center or other.order != self.order:
            raise ValueError("jets differ in center or order")

    def _wrap(self, coeffs):
        return TaylorJet(self.center, coeffs)

    def __add__(self, other):
        if isinstance(other, TaylorJet):
            self._check(other)
            return self._wrap(self.coeffs + other.coeffs)
        c = self.coeffs.copy()
        c[0] += other
        return self._wrap(c)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TaylorJet):
            self._check(other)
            return self._wrap(np.convolve(self.coeffs, other.coeffs)[: self.order + 1])
        return self._wrap(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self._wrap(self.coeffs / scalar)

    def _cos_sin(self):
        # c' = -s u', s' = c u' on the non-constant part, solved order by order.
        u = self.coeffs
        n = self.order
        c = np.zeros(n + 1)
        s = np.zeros(n + 1)
        c[0], s[0] = math.cos(u[0]), math.sin(u[0])
        du = np.arange(n + 1) * u
        for k in range(1, n + 1):
            # k c_k = -sum_{j=1..k} j u_j s_{k-j}
            c[k] = -np.dot(du[1 : k + 1], s[k - 1 :: -1][:k]) / k
            s[k] = np.dot(du[1 : k + 1], c[k - 1 :: -1][:k]) / k
        return c, s

    def cos(self):
        return self._wrap(self._cos_sin()[0])

    def sin(self):
        return self._wrap(self._cos_sin()[1])

    def derivative(self, k):
        """k-th derivative of the represented function at the center."""
        if not 0 <= k <= self.order:
            raise ValueError(f"derivative order {k} outside 0..{self.order}")
        return math.factorial(k) * self.coeffs[k]

    def derivatives(self):
        return np.array([self.derivative(k) for k in range(self.order + 1)])

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(x - self.center, self.coeffs)

    def __repr__(self):
        return f"TaylorJet(center={self.center}, coeffs={self.coeffs.tolist()})"
