import numpy as np
import pytest

from warpgen.core import (
    DatasetMeta,
    LabeledDataset,
    LabeledSeries,
    as_series,
    check_seed,
    derive_child_seed,
    make_rng,
    sample_standard_normal,
    sample_uniform_ball,
    sample_uniform_sphere,
)


class TestRng:
    def test_same_seed_same_stream(self):
        a = make_rng(12345)
        b = make_rng(12345)
        assert np.array_equal(a.standard_normal(100), b.standard_normal(100))

    def test_distinct_seeds_differ(self):
        assert make_rng(1).standard_normal() != make_rng(2).standard_normal()

    def test_seed_bounds(self):
        make_rng(0)
        make_rng(2**64 - 1)
        with pytest.raises(ValueError):
            make_rng(-1)
        with pytest.raises(ValueError):
            make_rng(2**64)
        with pytest.raises(ValueError):
            check_seed(1.5)

    def test_standard_normal_moments(self):
        rng = make_rng(20240901)
        draws = np.array([sample_standard_normal(rng) for _ in range(10**5)])
        assert -0.02 < draws.mean() < 0.02
        assert 0.97 < draws.var() < 1.03


class TestSphere:
    def test_dim1_is_sign(self):
        rng = make_rng(3)
        values = {float(sample_uniform_sphere(1, rng)[0]) for _ in range(50)}
        assert values <= {1.0, -1.0}
        assert len(values) == 2

    def test_unit_norm(self):
        rng = make_rng(4)
        for _ in range(200):
            v = sample_uniform_sphere(3, rng)
            assert abs(np.linalg.norm(v) - 1.0) < 1e-12

    def test_dim2_angle_uniformity(self):
        rng = make_rng(5)
        n = 10**5
        points = np.array([sample_uniform_sphere(2, rng) for _ in range(n)])
        angles = np.arctan2(points[:, 1], points[:, 0])
        counts, _ = np.histogram(angles, bins=8, range=(-np.pi, np.pi))
        sigma = np.sqrt(n * 0.125 * 0.875)
        assert np.all(np.abs(counts - n / 8) < 4 * sigma)

    def test_dim_must_be_positive(self):
        with pytest.raises(ValueError):
            sample_uniform_sphere(0, make_rng(0))


class TestBall:
    def test_norm_bound(self):
        rng = make_rng(6)
        for _ in range(500):
            assert np.linalg.norm(sample_uniform_ball(2, 75.0, rng)) <= 75.0

    def test_dim2_radial_density(self):
        # P(||v|| <= r/2) is the area ratio 1/4 for a disk
        rng = make_rng(7)
        n = 10**5
        norms = np.array([np.linalg.norm(sample_uniform_ball(2, 1.0, rng)) for _ in range(n)])
        assert abs(np.mean(norms <= 0.5) - 0.25) < 0.01

    def test_dim1_is_uniform_interval(self):
        rng = make_rng(8)
        draws = np.array([sample_uniform_ball(1, 2.0, rng)[0] for _ in range(10**4)])
        assert np.all(np.abs(draws) <= 2.0)
        assert abs(draws.mean()) < 0.05

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            sample_uniform_ball(0, 1.0, make_rng(0))
        with pytest.raises(ValueError):
            sample_uniform_ball(2, 0.0, make_rng(0))


class TestChildSeeds:
    def test_deterministic(self):
        for s, labels in [(0, [0]), (7, [3, 1]), (2**64 - 1, [5, 0, 2])]:
            assert derive_child_seed(s, labels) == derive_child_seed(s, labels)

    def test_order_sensitive(self):
        assert derive_child_seed(0, [0, 1]) != derive_child_seed(0, [1, 0])

    def test_master_sensitive(self):
        assert derive_child_seed(1, [0]) != derive_child_seed(2, [0])

    def test_range(self):
        for i in range(100):
            child = derive_child_seed(99, [i])
            assert 0 <= child < 2**64

    def test_no_collisions_over_a_million_labels(self):
        seen = {derive_child_seed(42, [i]) for i in range(10**6)}
        assert len(seen) == 10**6


class TestContainers:
    def test_as_series_promotes_1d(self):
        s = as_series([1.0, 2.0, 3.0])
        assert s.shape == (3, 1)
        assert s.dtype == np.float64

    def test_as_series_rejects_bad_input(self):
        with pytest.raises(ValueError):
            as_series(np.zeros((0, 2)))
        with pytest.raises(ValueError):
            as_series(np.zeros((2, 2, 2)))
        with pytest.raises(ValueError):
            as_series([1.0, np.nan])

    def test_labeled_series_equality(self):
        a = LabeledSeries("c", as_series([1.0, 2.0]))
        b = LabeledSeries("c", as_series([1.0, 2.0]))
        c = LabeledSeries("b", as_series([1.0, 2.0]))
        assert a == b
        assert a != c

    def test_dataset_requires_uniform_dimensionality(self):
        meta = DatasetMeta(generator="cbf", params={}, seed=0)
        items = [
            LabeledSeries("c", as_series(np.zeros((4, 2)))),
            LabeledSeries("b", as_series(np.zeros((4, 3)))),
        ]
        with pytest.raises(ValueError):
            LabeledDataset(items=items, dimensionality=2, meta=meta)

    def test_dataset_must_not_be_empty(self):
        meta = DatasetMeta(generator="cbf", params={}, seed=0)
        with pytest.raises(ValueError):
            LabeledDataset(items=[], dimensionality=1, meta=meta)

    def test_dataset_prng_recorded(self):
        meta = DatasetMeta(generator="ram", params={"length": 5}, seed=1)
        assert meta.prng == "pcg64"
