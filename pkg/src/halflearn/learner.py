"""Full tester-learner pipeline.

Stage 1 runs the weak proper learner on its own slice of the data. Stage 2
iterates localization rounds with halving scale delta_t = (1/100) 2^-t,
each round consuming a fresh slice sized 2 * 1000 / delta_t (the target
accepted count, oversampled so the rate check's floor still feeds the
inner learner); rounds run while the localization budget lasts. Stage 3
certifies every candidate with the wedge tester at that candidate's own
scale and at the target accuracy. Stage 4 scores every candidate on a
held-out selection slice and returns the minimizer.

Any tester rejection aborts with verdict rejected_non_gaussian and a
machine-readable stage name.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from . import verdicts
from .core import Halfspace, LabeledSampleSet, RunConfig, UnitVector, \
    empirical_error
from .update import EXPECTED_ACCEPT_MIN, localized_update
from .weak import DEGENERATE_CHOW
from .weak import MIN_SAMPLES as WEAK_MIN_SAMPLES
from .weak import weak_proper_learn
from .wedge import smallest_testable_eta, wedge_bound_test
from .chow import default_batch_count

DELTA_0 = 1.0 / 100.0

# Master-budget split: fresh draws per stage make independence auditable.
WEAK_SHARE = 0.25
LOCALIZATION_SHARE = 0.60
WEDGE_SHARE = 0.10


@dataclass(frozen=True)
class CandidateRecord:
    round_index: int
    direction: UnitVector
    delta: float
    empirical_error: float | None  # filled by the selection stage


@dataclass(frozen=True)
class BudgetPlan:
    n_weak: int
    round_slices: tuple[tuple[int, int], ...]  # raw slice per round
    wedge_slice: tuple[int, int]
    selection_slice: tuple[int, int]

    @property
    def rounds(self) -> int:
        return len(self.round_slices)


@dataclass(frozen=True)
class LearnReport:
    verdict: str
    hypothesis: Halfspace | None
    candidates: tuple[CandidateRecord, ...]
    rejection_stage: str | None
    samples_consumed: int
    seed: int
    config: RunConfig
    plan: BudgetPlan
    # Wall time per stage; deliberately excluded from the JSON report so
    # reruns stay byte-identical.
    stage_seconds: dict = field(default_factory=dict, compare=False)

    @property
    def learned(self) -> bool:
        return self.verdict == verdicts.LEARNED

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "rejection_stage": self.rejection_stage,
            "rounds": [
                {
                    "t": c.round_index,
                    "delta": c.delta,
                    "direction": c.direction.coords.tolist(),
                    "empirical_error": c.empirical_error,
                }
                for c in self.candidates
            ],
            "hypothesis": (self.hypothesis.normal.coords.tolist()
                           if self.hypothesis is not None else None),
            "samples_consumed": self.samples_consumed,
            "seed": self.seed,
            "config": {
                "epsilon": self.config.epsilon,
                "tau": self.config.tau,
                "seed": self.config.seed,
                "k_cap": self.config.k_cap,
                "c_a": self.config.c_a,
                "slack_multiplier": self.config.slack_multiplier,
            },
            "stage_slices": {
                "weak": [0, self.plan.n_weak],
                "rounds": [list(sl) for sl in self.plan.round_slices],
                "wedge": list(self.plan.wedge_slice),
                "selection": list(self.plan.selection_slice),
            },
        }


def round_delta(t: int) -> float:
    return DELTA_0 * 2.0**-t


def max_rounds(epsilon: float) -> int:
    """Loop runs t = 0 .. ceil(log2(1/epsilon)) when the budget allows."""
    return math.ceil(math.log2(1.0 / epsilon)) + 1


def round_raw_size(t: int) -> int:
    return math.ceil(EXPECTED_ACCEPT_MIN / round_delta(t))


def plan_budget(n: int, epsilon: float) -> BudgetPlan:
    """Deterministic split of the master sample budget.

    Raises if the budget cannot support the weak stage, one localization
    round, the coarsest wedge test, and the selection estimate.
    """
    n_weak = int(WEAK_SHARE * n)
    n_loc = int(LOCALIZATION_SHARE * n)
    n_wedge = int(WEDGE_SHARE * n)
    n_sel = n - n_weak - n_loc - n_wedge

    problems = []
    if n_weak < WEAK_MIN_SAMPLES:
        problems.append(f"weak-learner slice {n_weak} < {WEAK_MIN_SAMPLES}")
    if n_loc < round_raw_size(0):
        problems.append(f"localization slice {n_loc} cannot feed one round "
                        f"(needs {round_raw_size(0)})")
    if smallest_testable_eta(n_wedge) is None:
        problems.append(f"wedge slice {n_wedge} below the coarsest test")
    selection_min = math.ceil(math.log(1.0 / epsilon) / epsilon**2)
    if n_sel < selection_min:
        problems.append(f"selection slice {n_sel} < {selection_min}")
    if problems:
        raise ValueError("sample budget insufficient: " + "; ".join(problems))

    slices = []
    cursor = n_weak
    for t in range(max_rounds(epsilon)):
        raw = round_raw_size(t)
        if cursor + raw > n_weak + n_loc:
            break
        slices.append((cursor, cursor + raw))
        cursor += raw
    wedge_slice = (n_weak + n_loc, n_weak + n_loc + n_wedge)
    selection_slice = (n_weak + n_loc + n_wedge, n)
    return BudgetPlan(n_weak=n_weak, round_slices=tuple(slices),
                      wedge_slice=wedge_slice,
                      selection_slice=selection_slice)


def _wedge_schedule(delta: float, epsilon: float, eta_min: float) -> list[float]:
    """Certification scales for one candidate: its own scale and the target
    accuracy, both clamped to what the wedge slice can support."""
    etas = {min(max(delta, eta_min), 0.5), min(max(epsilon, eta_min), 0.5)}
    return sorted(etas)


def testable_learn(s: LabeledSampleSet, epsilon: float, tau: float,
                   cfg: RunConfig) -> LearnReport:
    """Run the full tester-learner on a finite sample.

    Returns a report that either carries a hypothesis halfspace (the
    candidate with the smallest held-out empirical error, ties to the
    earliest round) or names the tester stage that rejected the marginal.
    """
    if not 0.0 < epsilon < 0.5:
        raise ValueError("epsilon must lie in (0, 1/2)")
    if not 0.0 < tau < 1.0:
        raise ValueError("tau must lie in (0, 1)")
    cfg = replace(cfg, epsilon=epsilon, tau=tau)
    plan = plan_budget(s.n, epsilon)
    rng = np.random.default_rng(cfg.seed)

    eta_inner = 1.0 / (20000.0 * cfg.c_a**2)
    eta_min = smallest_testable_eta(plan.wedge_slice[1] - plan.wedge_slice[0])
    assert eta_min is not None  # plan_budget guarantees it

    # Failure budget split across planned tester invocations; only the
    # Chow batch count consumes it.
    invocations = 1 + plan.rounds + 2 * (plan.rounds + 1)
    tau_stage = tau / invocations

    consumed = plan.n_weak
    candidates: list[CandidateRecord] = []
    stage_seconds: dict = {}

    def report(verdict, hypothesis=None, stage=None):
        return LearnReport(verdict=verdict, hypothesis=hypothesis,
                           candidates=tuple(candidates),
                           rejection_stage=stage, samples_consumed=consumed,
                           seed=cfg.seed, config=cfg, plan=plan,
                           stage_seconds=stage_seconds)

    # Stage 1: weak proper learn on the first slice.
    clock = time.perf_counter()
    weak_slice = s.subset(slice(0, plan.n_weak))
    batch = default_batch_count(s.d, tau_stage, weak_slice.n)
    outcome = weak_proper_learn(weak_slice, eta_inner, cfg, rng,
                                batch_count=batch)
    stage_seconds["weak"] = time.perf_counter() - clock
    if not outcome.learned:
        stage = ("weak_learner.degenerate_chow"
                 if outcome.diagnostic == DEGENERATE_CHOW
                 else "weak_learner.moment_test")
        return report(verdicts.REJECTED_NON_GAUSSIAN, stage=stage)
    assert outcome.direction is not None
    candidates.append(CandidateRecord(0, outcome.direction, round_delta(0),
                                      None))

    # Stage 2: localization rounds while the budget lasts.
    clock = time.perf_counter()
    current = outcome.direction
    for t, (start, end) in enumerate(plan.round_slices):
        consumed += end - start
        round_set = s.subset(slice(start, end))
        batch = default_batch_count(s.d, tau_stage, EXPECTED_ACCEPT_MIN)
        update = localized_update(round_set, current, round_delta(t),
                                  eta_inner, cfg, rng, batch_count=batch)
        if not update.updated:
            stage_seconds["localization"] = time.perf_counter() - clock
            if update.inner_outcome is None:
                detail = "rate_check"
            elif update.inner_outcome.diagnostic == DEGENERATE_CHOW:
                detail = "degenerate_chow"
            else:
                detail = "moment_test"
            return report(verdicts.REJECTED_NON_GAUSSIAN,
                          stage=f"round_{t}.{detail}")
        assert update.new_direction is not None
        current = update.new_direction
        candidates.append(CandidateRecord(t + 1, current, round_delta(t + 1),
                                          None))
    stage_seconds["localization"] = time.perf_counter() - clock

    # Stage 3: wedge-certify every candidate on the shared wedge slice.
    clock = time.perf_counter()
    wedge_points = s.points[plan.wedge_slice[0]:plan.wedge_slice[1]]
    consumed += plan.wedge_slice[1] - plan.wedge_slice[0]
    for cand in candidates:
        for eta in _wedge_schedule(cand.delta, epsilon, eta_min):
            verdict = wedge_bound_test(wedge_points, cand.direction, eta, cfg)
            if not verdict.certified:
                stage_seconds["wedge"] = time.perf_counter() - clock
                return report(
                    verdicts.REJECTED_NON_GAUSSIAN,
                    stage=(f"wedge.candidate_{cand.round_index}."
                           f"{verdict.failed_check}"))
    stage_seconds["wedge"] = time.perf_counter() - clock

    # Stage 4: pick the candidate with the smallest held-out error.
    clock = time.perf_counter()
    selection = s.subset(slice(plan.selection_slice[0],
                               plan.selection_slice[1]))
    consumed += selection.n
    errors = [empirical_error(Halfspace(c.direction), selection)
              for c in candidates]
    candidates = [replace(c, empirical_error=err)
                  for c, err in zip(candidates, errors)]
    best = int(np.argmin(errors))  # argmin keeps the earliest round on ties
    stage_seconds["selection"] = time.perf_counter() - clock
    return report(verdicts.LEARNED,
                  hypothesis=Halfspace(candidates[best].direction))
