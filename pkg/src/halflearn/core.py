"""Shared numeric types and halfspace primitives.

Everything here is immutable after construction and safe to share
read-only across threads; the operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Vectors with norm at or below this cannot be meaningfully normalized.
NORM_FLOOR = 1e-12

_UNIT_TOL = 1e-9


class DegenerateVectorError(ValueError):
    """Vector norm is at or below the normalization floor."""


def _frozen_view(arr: np.ndarray) -> np.ndarray:
    view = arr.view()
    view.setflags(write=False)
    return view


@dataclass(frozen=True, eq=False)
class UnitVector:
    """Direction in d >= 2 dimensions with unit Euclidean norm."""

    coords: np.ndarray

    def __post_init__(self):
        coords = np.ascontiguousarray(self.coords, dtype=np.float64)
        if coords.ndim != 1:
            raise ValueError("coords must be one-dimensional")
        if coords.shape[0] < 2:
            raise ValueError("dimension must be at least 2")
        if not np.all(np.isfinite(coords)):
            raise ValueError("coords must be finite")
        norm = float(np.linalg.norm(coords))
        if abs(norm - 1.0) > _UNIT_TOL:
            raise ValueError(f"not a unit vector (norm {norm!r})")
        object.__setattr__(self, "coords", _frozen_view(coords))

    @property
    def d(self) -> int:
        return self.coords.shape[0]

    def negated(self) -> "UnitVector":
        return UnitVector(-self.coords)

    def distance_to(self, other: "UnitVector") -> float:
        return float(np.linalg.norm(self.coords - other.coords))


@dataclass(frozen=True, eq=False)
class Halfspace:
    """Homogeneous halfspace x -> sign(normal . x); boundary maps to +1."""

    normal: UnitVector

    @property
    def d(self) -> int:
        return self.normal.d

    def negated(self) -> "Halfspace":
        return Halfspace(self.normal.negated())


@dataclass(frozen=True, eq=False)
class LabeledSampleSet:
    """Points in R^d with labels in {-1, +1}."""

    points: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        points = np.ascontiguousarray(self.points, dtype=np.float64)
        labels = np.ascontiguousarray(self.labels, dtype=np.int64)
        if points.ndim != 2:
            raise ValueError("points must be an (n, d) array")
        if labels.ndim != 1 or labels.shape[0] != points.shape[0]:
            raise ValueError("labels must be one per point")
        if points.shape[0] < 1:
            raise ValueError("need at least one sample")
        if not np.all(np.isfinite(points)):
            raise ValueError("points must be finite")
        if not np.all(np.abs(labels) == 1):
            raise ValueError("labels must be -1 or +1")
        object.__setattr__(self, "points", _frozen_view(points))
        object.__setattr__(self, "labels", _frozen_view(labels))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def subset(self, index) -> "LabeledSampleSet":
        """Sample set restricted to a slice or index array."""
        return LabeledSampleSet(self.points[index], self.labels[index])


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by the testers and the full learner.

    c_a is the calibration constant of the weak learner's distance
    guarantee; slack_multiplier scales every statistical tolerance band
    (z-score units).
    """

    epsilon: float
    tau: float
    seed: int
    k_cap: int = 4
    c_a: float = 2.0
    slack_multiplier: float = 6.0

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")
        if not 0.0 < self.tau < 1.0:
            raise ValueError("tau must lie in (0, 1)")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in uint64")
        if int(self.k_cap) < 2:
            raise ValueError("k_cap must be at least 2")
        if not self.c_a > 0.0:
            raise ValueError("c_a must be positive")
        if not self.slack_multiplier > 0.0:
            raise ValueError("slack_multiplier must be positive")


def predict(h: Halfspace, x: np.ndarray) -> int:
    """Label of a single point: +1 iff normal . x >= 0."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (h.d,):
        raise ValueError(f"point has shape {x.shape}, expected ({h.d},)")
    return 1 if float(x @ h.normal.coords) >= 0.0 else -1


def predict_batch(h: Halfspace, points: np.ndarray) -> np.ndarray:
    """Vector of labels for an (n, d) array of points."""
    points = np.asarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[1] != h.d:
        raise ValueError("points must be (n, d) with d matching the halfspace")
    return np.where(points @ h.normal.coords >= 0.0, 1, -1).astype(np.int64)


def empirical_error(h: Halfspace, s: LabeledSampleSet) -> float:
    """Fraction of samples where the halfspace disagrees with the label."""
    if s.d != h.d:
        raise ValueError("dimension mismatch between halfspace and samples")
    return float(np.mean(predict_batch(h, s.points) != s.labels))


def normalize(v: np.ndarray) -> UnitVector:
    """v / ||v||; raises DegenerateVectorError at or below the norm floor."""
    v = np.asarray(v, dtype=np.float64)
    norm = float(np.linalg.norm(v))
    if not norm > NORM_FLOOR:
        raise DegenerateVectorError(f"norm {norm!r} is at or below {NORM_FLOOR}")
    return UnitVector(v / norm)


def random_unit_vector(d: int, rng: np.random.Generator) -> UnitVector:
    """Uniformly random direction on the unit sphere in R^d."""
    while True:
        g = rng.standard_normal(d)
        if np.linalg.norm(g) > NORM_FLOOR:
            return normalize(g)
