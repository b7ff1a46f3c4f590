import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from halflearn import (DegenerateVectorError, Halfspace, LabeledSampleSet,
                       RunConfig, UnitVector, empirical_error, normalize,
                       predict, predict_batch)

from conftest import basis_vector


def e1_halfspace(d=2):
    return Halfspace(UnitVector(basis_vector(d, 0)))


class TestUnitVector:
    def test_validates_norm(self):
        with pytest.raises(ValueError):
            UnitVector(np.array([1.0, 1.0]))

    def test_requires_two_dimensions(self):
        with pytest.raises(ValueError):
            UnitVector(np.array([1.0]))

    def test_is_read_only(self):
        v = UnitVector(np.array([0.6, 0.8]))
        with pytest.raises(ValueError):
            v.coords[0] = 0.0


class TestPredict:
    def test_positive_projection(self):
        assert predict(e1_halfspace(), np.array([2.0, 0.0])) == 1

    def test_boundary_is_positive(self):
        # sign(0) = +1 keeps boundary points deterministic
        assert predict(e1_halfspace(), np.array([0.0, 5.0])) == 1

    def test_negative_projection(self):
        assert predict(e1_halfspace(), np.array([-0.1, 99.0])) == -1

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            predict(e1_halfspace(), np.array([1.0, 2.0, 3.0]))

    @given(scale=st.floats(min_value=1e-6, max_value=1e6),
           x=arrays(np.float64, (3,),
                    elements=st.floats(-100, 100, allow_nan=False,
                                       allow_subnormal=False)))
    def test_scale_invariance(self, scale, x):
        # subnormal inputs could underflow to signed zero under scaling,
        # which is outside the positive-rescaling contract
        h = e1_halfspace(3)
        assert predict(h, x) == predict(h, scale * x)


class TestEmpiricalError:
    def test_consistent_labels(self, rng):
        h = e1_halfspace(4)
        points = rng.standard_normal((50, 4))
        s = LabeledSampleSet(points, predict_batch(h, points))
        assert empirical_error(h, s) == 0.0

    def test_all_flipped(self, rng):
        h = e1_halfspace(4)
        points = rng.standard_normal((50, 4))
        s = LabeledSampleSet(points, -predict_batch(h, points))
        assert empirical_error(h, s) == 1.0

    def test_three_of_ten_flipped(self):
        # Hand-built 10-point set: labels from e1, rows 2, 5, 8 flipped.
        xs = np.array([[1.0, 0.0], [2.0, 1.0], [3.0, -1.0], [-1.0, 2.0],
                       [-2.0, 0.5], [0.5, 3.0], [-0.5, -3.0], [1.5, 1.5],
                       [-1.5, 0.0], [2.5, -2.0]])
        labels = np.where(xs[:, 0] >= 0, 1, -1)
        labels[[2, 5, 8]] *= -1
        s = LabeledSampleSet(xs, labels)
        assert empirical_error(e1_halfspace(), s) == pytest.approx(0.3)

    def test_complement_rule(self, rng):
        # No point sits on the boundary, so errors of h and -h sum to 1.
        h = e1_halfspace(3)
        points = rng.standard_normal((101, 3))
        labels = rng.choice([-1, 1], size=101)
        s = LabeledSampleSet(points, labels)
        total = empirical_error(h, s) + empirical_error(h.negated(), s)
        assert total == pytest.approx(1.0)


class TestNormalize:
    def test_pythagorean(self):
        v = normalize(np.array([3.0, 4.0]))
        assert np.allclose(v.coords, [0.6, 0.8])

    def test_already_unit(self):
        v = normalize(np.array([0.0, 0.0, 1.0]))
        assert np.allclose(v.coords, [0.0, 0.0, 1.0])

    def test_below_floor(self):
        with pytest.raises(DegenerateVectorError):
            normalize(np.array([1e-15, 0.0]))

    @given(scale=st.floats(min_value=1e-3, max_value=1e3))
    def test_scale_invariant(self, scale):
        v = np.array([1.0, -2.0, 0.5])
        a = normalize(v)
        b = normalize(scale * v)
        assert np.allclose(a.coords, b.coords, atol=1e-12)


class TestLabeledSampleSet:
    def test_rejects_bad_labels(self):
        with pytest.raises(ValueError):
            LabeledSampleSet(np.zeros((2, 2)), np.array([0, 1]))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            LabeledSampleSet(np.array([[np.inf, 0.0]]), np.array([1]))

    def test_subset_slice(self, rng):
        s = LabeledSampleSet(rng.standard_normal((10, 2)),
                             np.ones(10, dtype=int))
        assert s.subset(slice(2, 7)).n == 5


class TestRunConfig:
    def test_defaults_valid(self):
        cfg = RunConfig(epsilon=0.05, tau=0.05, seed=0)
        assert cfg.k_cap == 4

    @pytest.mark.parametrize("kwargs", [
        {"epsilon": 0.0}, {"epsilon": 1.0}, {"tau": 0.0}, {"k_cap": 1},
        {"c_a": 0.0}, {"slack_multiplier": 0.0}, {"seed": -1},
    ])
    def test_rejects_out_of_range(self, kwargs):
        base = {"epsilon": 0.05, "tau": 0.05, "seed": 0}
        base.update(kwargs)
        with pytest.raises(ValueError):
            RunConfig(**base)
