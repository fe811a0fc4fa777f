import numpy as np
import pytest

from lexecon.econometrics import adf_test
from lexecon.econometrics.critical_values import adf_critical_values
from lexecon.errors import ConstantSeriesError, DataError


class TestAdf:
    def test_constant_series(self):
        with pytest.raises(ConstantSeriesError):
            adf_test(np.ones(100))

    def test_too_short(self):
        with pytest.raises(DataError, match="too short"):
            adf_test(np.arange(15.0), max_lag=12)

    def test_white_noise_rejects(self):
        rng = np.random.default_rng(1)
        res = adf_test(rng.normal(size=400))
        assert res.rejected_at_5pct
        assert res.statistic < res.critical_values[0.01]

    def test_random_walk_does_not_reject(self):
        rng = np.random.default_rng(2)
        res = adf_test(np.cumsum(rng.normal(size=400)))
        assert not res.rejected_at_5pct

    def test_lag_bounded_and_flag_consistent(self):
        rng = np.random.default_rng(3)
        res = adf_test(np.cumsum(rng.normal(size=300)), max_lag=6)
        assert 0 <= res.lag <= 6
        assert res.rejected_at_5pct == (res.statistic
                                        < res.critical_values[0.05])

    def test_trend_spec_runs(self):
        rng = np.random.default_rng(4)
        y = np.cumsum(rng.normal(size=300)) + 0.05 * np.arange(300)
        res = adf_test(y, deterministic="ct")
        assert res.deterministic == "ct"
        assert res.critical_values[0.05] < adf_critical_values(
            res.nobs, "c")[0.05]

    def test_ar1_with_quick_reversion_rejects(self):
        rng = np.random.default_rng(5)
        y = np.zeros(500)
        for t in range(1, 500):
            y[t] = 0.5 * y[t - 1] + rng.normal()
        assert adf_test(y).rejected_at_5pct


class TestCriticalValues:
    def test_large_sample_limits(self):
        cvs = adf_critical_values(10_000_000, "c")
        assert cvs[0.05] == pytest.approx(-2.86154, abs=2e-4)
        assert cvs[0.01] == pytest.approx(-3.43035, abs=2e-4)
        cvs_ct = adf_critical_values(10_000_000, "ct")
        assert cvs_ct[0.05] == pytest.approx(-3.41049, abs=2e-4)

    def test_small_sample_correction_sign(self):
        # finite-sample critical values are further from zero
        assert adf_critical_values(50, "c")[0.05] < \
            adf_critical_values(5000, "c")[0.05]

    def test_unknown_deterministic(self):
        with pytest.raises(DataError):
            adf_critical_values(100, "ctt")
