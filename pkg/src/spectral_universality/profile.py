from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MANIFOLDS = ("sphere", "torus", "euclid")


@dataclass(frozen=True)
class RadialProfile:
    """A radial kernel sampled on a distance grid.

    ``level`` is the spectral level: the degree ``n`` on the sphere or the
    eigenvalue cutoff ``L`` on the torus and in flat space.
    """

    manifold: str
    level: float
    distances: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.manifold not in MANIFOLDS:
            raise ValueError(f"unknown manifold tag {self.manifold!r}")
        distances = np.asarray(self.distances, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if distances.ndim != 1 or distances.shape != values.shape:
            raise ValueError("distances and values must be 1-d arrays of equal length")
        if np.any(distances < 0) or np.any(np.diff(distances) <= 0):
            raise ValueError("distances must be nonnegative and strictly increasing")
        if not np.all(np.isfinite(values)):
            raise ValueError("profile values must be finite")
        object.__setattr__(self, "distances", distances)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.distances)
