import numpy as np
import pytest

from halflearn import (Halfspace, LabeledSampleSet, RunConfig, UnitVector,
                       predict_batch, weak_proper_learn)
from halflearn.weak import DEGENERATE_CHOW, implied_moment_degree

from conftest import basis_vector


def cfg(seed=0):
    return RunConfig(epsilon=0.05, tau=0.05, seed=seed)


def planted(n, d, seed, flip=0.0):
    rng = np.random.default_rng(seed)
    points = rng.standard_normal((n, d))
    v = UnitVector(basis_vector(d, 0))
    labels = predict_batch(Halfspace(v), points)
    if flip > 0.0:
        mask = rng.random(n) < flip
        labels = np.where(mask, -labels, labels)
    return LabeledSampleSet(points, labels), v


class TestLearnBranch:
    def test_clean_direction_close(self):
        angles = []
        for seed in range(20):
            s, v = planted(200_000, 5, seed)
            out = weak_proper_learn(s, 0.01, cfg(seed))
            assert out.learned
            angles.append(np.arccos(
                np.clip(out.direction.coords @ v.coords, -1, 1)))
        assert max(angles) <= 0.05

    def test_flipped_labels_within_calibrated_bound(self):
        # Random flips at opt in {0, 0.02, 0.05}: every accepting run stays
        # within c_a sqrt(opt + eta) of the target with the calibrated
        # c_a = 2.
        eta = 0.01
        for opt in (0.0, 0.02, 0.05):
            for seed in range(20):
                s, v = planted(200_000, 8, seed, flip=opt)
                out = weak_proper_learn(s, eta, cfg(seed))
                assert out.learned
                dist = np.linalg.norm(out.direction.coords - v.coords)
                assert dist <= 2.0 * np.sqrt(opt + eta), (opt, seed, dist)

    def test_direction_scale_invariant(self):
        # Chow scaling cannot change the normalized output.
        s, _ = planted(5000, 3, 1)
        a = weak_proper_learn(s, 0.1, cfg(5))
        b = weak_proper_learn(s, 0.1, cfg(5))
        assert np.array_equal(a.direction.coords, b.direction.coords)


class TestRejectBranch:
    def test_rademacher_rejected_before_chow(self):
        rng = np.random.default_rng(0)
        points = rng.integers(0, 2, size=(50_000, 5)).astype(float) * 2 - 1
        v = UnitVector(basis_vector(5, 0))
        s = LabeledSampleSet(points, predict_batch(Halfspace(v), points))
        out = weak_proper_learn(s, 0.01, cfg())
        assert not out.learned
        assert out.direction is None
        assert not out.moment_report.certified
        assert out.diagnostic is None

    def test_degenerate_chow_reported(self):
        # Mirrored points with equal labels interleaved pairwise: the plain
        # mean of y x cancels exactly, so the Chow direction degenerates
        # while the x-marginal still passes the moment test.
        rng = np.random.default_rng(3)
        half = rng.standard_normal((2000, 3))
        points = np.empty((4000, 3))
        points[0::2] = half
        points[1::2] = -half
        labels = np.ones(4000, dtype=int)
        s = LabeledSampleSet(points, labels)
        out = weak_proper_learn(s, 0.4, cfg(), batch_count=1)
        assert not out.learned
        assert out.moment_report.certified
        assert out.diagnostic == DEGENERATE_CHOW


class TestContract:
    def test_eta_range(self):
        s, _ = planted(2000, 3, 0)
        with pytest.raises(ValueError):
            weak_proper_learn(s, 0.0, cfg())

    def test_min_samples(self):
        s, _ = planted(999, 3, 0)
        with pytest.raises(ValueError):
            weak_proper_learn(s, 0.1, cfg())

    def test_implied_degree_monotone(self):
        assert implied_moment_degree(0.9) >= 1
        assert implied_moment_degree(0.01) >= 64
        assert implied_moment_degree(1e-6) == 64
