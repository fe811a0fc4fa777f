import itertools

import numpy as np
import pytest

from lexecon.errors import DataError, InsufficientMatchError
from lexecon.extrapolation import FeatureMatrix
from lexecon.lexicon import RatedWordSet
from lexecon.resampling import (matched_feature_comparison, mc_mean_diff_test,
                                valence_bucket_match)


def exact_permutation_p(a, b):
    """Enumerate every split of the pool at the original sizes."""
    pool = np.concatenate([a, b])
    n, na = pool.size, len(a)
    obs = abs(np.mean(a) - np.mean(b))
    count = total = 0
    for combo in itertools.combinations(range(n), na):
        mask = np.zeros(n, dtype=bool)
        mask[list(combo)] = True
        diff = abs(pool[mask].mean() - pool[~mask].mean())
        count += diff >= obs - 1e-12
        total += 1
    return count / total


class TestMcMeanDiff:
    def test_identical_samples(self):
        res = mc_mean_diff_test([1.0, 2.0, 3.0], [1.0, 2.0, 3.0],
                                n_resamples=500, seed=1)
        assert res.observed_diff == 0.0
        assert res.p_value == 1.0

    def test_matches_enumeration(self):
        a = np.array([1.0, 2.0, 3.0])
        b = np.array([1.0, 2.0, 3.0, 4.0])
        exact = exact_permutation_p(a, b)
        res = mc_mean_diff_test(a, b, n_resamples=10_000, seed=7)
        assert abs(res.p_value - exact) <= 0.02

    def test_relabel_symmetry_exact(self):
        rng = np.random.default_rng(5)
        a = rng.normal(0.0, 1.0, 9)
        b = rng.normal(0.4, 1.0, 14)
        p_ab = mc_mean_diff_test(a, b, n_resamples=2000, seed=3)
        p_ba = mc_mean_diff_test(b, a, n_resamples=2000, seed=3)
        assert p_ab.p_value == p_ba.p_value
        assert p_ab.observed_diff == -p_ba.observed_diff

    def test_seeded_determinism(self):
        rng = np.random.default_rng(0)
        a, b = rng.normal(0.0, 1.0, 8), rng.normal(0.3, 1.0, 8)
        r1 = mc_mean_diff_test(a, b, n_resamples=1000, seed=9)
        r2 = mc_mean_diff_test(a, b, n_resamples=1000, seed=9)
        assert r1 == r2
        r3 = mc_mean_diff_test(a, b, n_resamples=1000, seed=10)
        assert r3.n_exceed != r1.n_exceed

    def test_add_one_rule_keeps_p_positive(self):
        res = mc_mean_diff_test(np.zeros(6), 10.0 + np.arange(6.0),
                                n_resamples=999, seed=2)
        assert res.p_value == (res.n_exceed + 1) / 1000.0
        assert 0.0 < res.p_value <= 0.02

    def test_input_validation(self):
        with pytest.raises(DataError):
            mc_mean_diff_test([1.0], [1.0, 2.0])
        with pytest.raises(DataError):
            mc_mean_diff_test([1.0, 2.0], [1.0, 2.0], n_resamples=0)


def rated(name, words, valence, scale=(0.0, 1.0)):
    values = np.asarray(valence, dtype=np.float64)[:, None]
    return RatedWordSet(name=name, feature_names=("valence",), scale=scale,
                        words=tuple(words), values=values)


class TestBucketMatch:
    def test_self_match_reproduces_histogram(self):
        rng = np.random.default_rng(2)
        words = [f"w{i}" for i in range(50)]
        vals = rng.uniform(0, 1, 50)
        target = rated("t", words, vals)
        sample = valence_bucket_match(target, target, "valence",
                                      n_buckets=10, seed=4)
        assert sorted(sample.per_bucket_counts) == sorted(
            sample.target_bucket_counts)
        assert sorted(sample.words) == sorted(words)

    def test_single_bucket_case(self):
        target = rated("t", ["a", "b"], [0.31, 0.33])
        source = rated("s", [f"s{i}" for i in range(6)],
                       [0.30, 0.32, 0.34, 0.36, 0.38, 0.39])
        sample = valence_bucket_match(target, source, "valence",
                                      n_buckets=10, seed=0)
        assert len(sample.words) == 2
        # bucket 3 covers [0.3, 0.4)
        assert all(w in source.words for w in sample.words)
        assert sample.per_bucket_counts[3] == 2
        assert sum(sample.per_bucket_counts) == 2

    def test_sample_stays_in_bucket(self):
        rng = np.random.default_rng(8)
        target = rated("t", [f"t{i}" for i in range(40)],
                       rng.uniform(0, 1, 40))
        source = rated("s", [f"s{i}" for i in range(60)],
                       rng.uniform(0, 1, 60))
        sample = valence_bucket_match(target, source, "valence",
                                      n_buckets=5, seed=1)
        src_val = dict(zip(source.words, source.values[:, 0]))
        picked = np.array([src_val[w] for w in sample.words])
        hist = np.histogram(picked, bins=5, range=(0, 1))[0]
        assert tuple(hist) == sample.per_bucket_counts

    def test_insufficient_match(self):
        target = rated("t", ["a", "b"], [0.05, 0.06])
        source = rated("s", ["x", "y"], [0.95, 0.96])
        with pytest.raises(InsufficientMatchError):
            valence_bucket_match(target, source, "valence", n_buckets=10,
                                 seed=0)

    def test_distribution_matching_simulation(self):
        rng = np.random.default_rng(12)
        target = rated("t", [f"t{i}" for i in range(150)],
                       rng.uniform(0, 1, 150))
        source = rated("s", [f"s{i}" for i in range(150)],
                       rng.uniform(0, 1, 150))
        src_val = dict(zip(source.words, source.values[:, 0]))
        means = []
        for r in range(1000):
            s = valence_bucket_match(target, source, "valence",
                                     n_buckets=10, seed=99, repeat=r)
            means.append(np.mean([src_val[w] for w in s.words]))
        assert abs(np.mean(means) - target.values.mean()) <= 0.02


def feature_matrix(words, values, names):
    return FeatureMatrix(words=tuple(words), feature_names=tuple(names),
                         values=np.asarray(values, dtype=np.float64))


class TestMatchedComparison:
    def test_self_comparison(self):
        rng = np.random.default_rng(3)
        words = [f"w{i}" for i in range(40)]
        target = rated("t", words, rng.uniform(0, 1, 40))
        feats = feature_matrix(words, rng.uniform(0, 7, (40, 3)),
                               ["f1", "f2", "f3"])
        res = matched_feature_comparison(target, target, feats,
                                         n_repeats=200, seed=5)
        # full overlap: every repeat draws the whole set
        np.testing.assert_allclose(res.source_estimates, res.target_means)
        np.testing.assert_allclose(res.p_values, 1.0)

    def test_planted_effect_flagged(self):
        rng = np.random.default_rng(17)
        n_t, n_s = 100, 300
        t_words = [f"t{i}" for i in range(n_t)]
        s_words = [f"s{i}" for i in range(n_s)]
        target = rated("t", t_words, rng.uniform(0, 1, n_t))
        source = rated("s", s_words, rng.uniform(0, 1, n_s))
        t_vals = rng.uniform(2, 5, (n_t, 3))
        s_vals = rng.uniform(2, 5, (n_s, 3))
        s_vals[:, 1] += 2.0  # planted shift on one feature
        feats = feature_matrix(
            t_words + s_words, np.vstack([t_vals, s_vals]),
            ["f1", "f2", "f3"])
        res = matched_feature_comparison(target, source, feats,
                                         n_repeats=2000, seed=21)
        assert res.p_values[1] < 0.01
        assert res.p_values[0] > 0.05 and res.p_values[2] > 0.05

    def test_default_repeat_count(self):
        import inspect
        sig = inspect.signature(matched_feature_comparison)
        assert sig.parameters["n_repeats"].default == 2000

    def test_determinism(self):
        rng = np.random.default_rng(1)
        words = [f"w{i}" for i in range(30)]
        target = rated("t", words[:15], rng.uniform(0, 1, 15))
        source = rated("s", words[15:], rng.uniform(0, 1, 15))
        feats = feature_matrix(words, rng.uniform(0, 7, (30, 2)),
                               ["f1", "f2"])
        r1 = matched_feature_comparison(target, source, feats,
                                        n_repeats=100, seed=6)
        r2 = matched_feature_comparison(target, source, feats,
                                        n_repeats=100, seed=6)
        np.testing.assert_array_equal(r1.p_values, r2.p_values)
        np.testing.assert_array_equal(r1.source_estimates,
                                      r2.source_estimates)
