"""Moment-matching certifier against the standard Gaussian.

Each monomial up to degree k gets a per-monomial tolerance band
``slack_multiplier * sqrt(Var[m] / n)``: the scale at which even truly
Gaussian samples fluctuate, so completeness is testable at realistic
sample sizes. A strict mode with the theoretical uniform tolerance
``(1 / (k d^k)) * (1 / (C sqrt(k)))^(k+1)`` is available for conformance
experiments; it requires the caller to supply the constant C and rejects
essentially everything at desk-scale n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import verdicts
from .core import LabeledSampleSet, RunConfig
from .moments import (MonomialExponent, batch_empirical_moments,
                      enumerate_monomials, gaussian_moment,
                      gaussian_moment_variance)

MIN_SAMPLES = 100
MAX_REPORTED_VIOLATIONS = 10


@dataclass(frozen=True)
class MomentViolation:
    monomial: MonomialExponent
    empirical: float
    reference: float
    tolerance: float

    @property
    def ratio(self) -> float:
        return abs(self.empirical - self.reference) / self.tolerance


@dataclass(frozen=True)
class MomentTestReport:
    """Certified iff every monomial sits inside its tolerance band."""

    verdict: str
    worst_violations: tuple[MomentViolation, ...]

    @property
    def certified(self) -> bool:
        return self.verdict == verdicts.CERTIFIED

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "violations": [
                {
                    "monomial": list(v.monomial.exponents),
                    "empirical": v.empirical,
                    "reference": v.reference,
                    "tolerance": v.tolerance,
                }
                for v in self.worst_violations
            ],
        }


def strict_tolerance(k: int, d: int, constant: float) -> float:
    """Theoretical uniform moment tolerance; vanishing for realistic k, d."""
    if constant <= 0.0:
        raise ValueError("constant must be positive")
    return (1.0 / (k * d**k)) * (1.0 / (constant * math.sqrt(k))) ** (k + 1)


def moment_match_test(s: LabeledSampleSet, k: int, cfg: RunConfig,
                      strict_constant: float | None = None) -> MomentTestReport:
    """Certify that all sample moments up to degree k match N(0, I).

    Labels are ignored; the test concerns the x-marginal only. With
    ``strict_constant`` set, the uniform theoretical tolerance replaces the
    statistical bands.
    """
    if s.n < MIN_SAMPLES:
        raise ValueError(f"need at least {MIN_SAMPLES} samples, got {s.n}")
    if not 1 <= k <= cfg.k_cap:
        raise ValueError(f"k must lie in [1, {cfg.k_cap}]")

    monomials = enumerate_monomials(s.d, k)
    empirical = batch_empirical_moments(s.points, monomials)

    violations = []
    for idx, (m, emp) in enumerate(zip(monomials, empirical)):
        ref = gaussian_moment(m)
        if strict_constant is None:
            tol = cfg.slack_multiplier * math.sqrt(
                gaussian_moment_variance(m) / s.n)
        else:
            tol = strict_tolerance(k, s.d, strict_constant)
        if abs(float(emp) - ref) > tol:
            violations.append((idx, MomentViolation(m, float(emp), ref, tol)))

    # Worst first; ties fall back to graded-lex enumeration order.
    violations.sort(key=lambda pair: (-pair[1].ratio, pair[0]))
    worst = tuple(v for _, v in violations[:MAX_REPORTED_VIOLATIONS])
    verdict = verdicts.CERTIFIED if not violations else verdicts.REJECTED_NON_GAUSSIAN
    return MomentTestReport(verdict=verdict, worst_violations=worst)
