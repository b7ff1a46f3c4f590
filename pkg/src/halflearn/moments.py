"""Monomial enumeration and moments of the standard Gaussian.

The exact moments here are the reference side of every moment-matching
test; the empirical side is evaluated by the batched chain kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from ._kernels import chain_sums
from .core import LabeledSampleSet

# Exact double factorials stay inside int64/float64 comfort up to here.
MAX_MOMENT_DEGREE = 20


@dataclass(frozen=True)
class MonomialExponent:
    """Exponent vector of a d-variate monomial with degree >= 1."""

    exponents: tuple[int, ...]

    def __post_init__(self):
        exps = tuple(int(a) for a in self.exponents)
        if len(exps) < 1:
            raise ValueError("need at least one variable")
        if any(a < 0 for a in exps):
            raise ValueError("exponents must be non-negative")
        if sum(exps) < 1:
            raise ValueError("degree must be at least 1")
        object.__setattr__(self, "exponents", exps)

    @property
    def d(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)


def _compositions(total: int, parts: int):
    """Weak compositions of ``total`` into ``parts``, lexicographically
    descending, e.g. (2,0), (1,1), (0,2)."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_monomials(d: int, k: int) -> list[MonomialExponent]:
    """All monomials with 1 <= degree <= k, graded then descending-lex.

    The count is C(d + k, k) - 1.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if k < 1:
        raise ValueError("k must be positive")
    out = []
    for degree in range(1, k + 1):
        for exps in _compositions(degree, d):
            out.append(MonomialExponent(exps))
    assert len(out) == comb(d + k, k) - 1
    return out


def _double_factorial(a: int) -> int:
    # (-1)!! == 1 by convention
    result = 1
    while a > 1:
        result *= a
        a -= 2
    return result


def _gaussian_moment_unchecked(exponents: Sequence[int]) -> float:
    if any(a % 2 == 1 for a in exponents):
        return 0.0
    value = 1
    for a in exponents:
        value *= _double_factorial(a - 1)
    return float(value)


def gaussian_moment(m: MonomialExponent) -> float:
    """E[x^m] under N(0, I): product of (a_i - 1)!! if all a_i even, else 0."""
    if m.degree > MAX_MOMENT_DEGREE:
        raise ValueError(f"degree {m.degree} exceeds the exact-arithmetic cap "
                         f"of {MAX_MOMENT_DEGREE}")
    return _gaussian_moment_unchecked(m.exponents)


def gaussian_moment_variance(m: MonomialExponent) -> float:
    """Var[x^m] under N(0, I), computed from the moment oracle itself."""
    if m.degree > MAX_MOMENT_DEGREE:
        raise ValueError(f"degree {m.degree} exceeds the exact-arithmetic cap "
                         f"of {MAX_MOMENT_DEGREE}")
    second = _gaussian_moment_unchecked(tuple(2 * a for a in m.exponents))
    first = _gaussian_moment_unchecked(m.exponents)
    return second - first * first


def _chain_arrays(monomials: Iterable[MonomialExponent]):
    """Evaluation chain covering the monomials and all their ancestors.

    Returns (parents, coords, requested_indices); parents precede children.
    """
    index: dict[tuple[int, ...], int] = {}
    parents: list[int] = []
    coords: list[int] = []

    def ensure(exps: tuple[int, ...]) -> int:
        found = index.get(exps)
        if found is not None:
            return found
        last = max(i for i, a in enumerate(exps) if a > 0)
        parent = exps[:last] + (exps[last] - 1,) + exps[last + 1:]
        parent_idx = ensure(parent) if sum(parent) > 0 else -1
        idx = len(parents)
        index[exps] = idx
        parents.append(parent_idx)
        coords.append(last)
        return idx

    requested = [ensure(m.exponents) for m in monomials]
    return (np.asarray(parents, dtype=np.intp),
            np.asarray(coords, dtype=np.intp),
            np.asarray(requested, dtype=np.intp))


def batch_empirical_moments(points: np.ndarray,
                            monomials: Sequence[MonomialExponent]) -> np.ndarray:
    """Empirical mean of every monomial over the rows of ``points``."""
    points = np.ascontiguousarray(points, dtype=np.float64)
    if points.ndim != 2 or points.shape[0] < 1:
        raise ValueError("points must be a non-empty (n, d) array")
    d = points.shape[1]
    for m in monomials:
        if m.d != d:
            raise ValueError(f"monomial over {m.d} variables, points have {d}")
    if not monomials:
        return np.zeros(0, dtype=np.float64)
    parents, coords, requested = _chain_arrays(monomials)
    sums = chain_sums(points, parents, coords)
    return sums[requested] / points.shape[0]


def empirical_moment(s: LabeledSampleSet, m: MonomialExponent) -> float:
    """(1/n) sum_j prod_i x_{j,i}^{a_i} over the sample points."""
    if m.d != s.d:
        raise ValueError(f"monomial over {m.d} variables, samples have {s.d}")
    return float(batch_empirical_moments(s.points, [m])[0])
