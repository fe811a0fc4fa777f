"""Augmented Dickey-Fuller unit-root test with Schwarz lag selection."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from lexecon.econometrics._common import ols
from lexecon.econometrics.critical_values import adf_critical_values
from lexecon.errors import ConstantSeriesError, DataError


@dataclass(frozen=True)
class AdfResult:
    statistic: float
    lag: int
    deterministic: str
    critical_values: dict
    rejected_at_5pct: bool
    nobs: int
    variable: str = ""

    def to_dict(self) -> dict:
        return {"variable": self.variable, "statistic": self.statistic,
                "lag": self.lag, "deterministic": self.deterministic,
                "critical_values": {f"{int(k * 100)}%": v for k, v in
                                    sorted(self.critical_values.items())},
                "rejected_at_5pct": self.rejected_at_5pct,
                "nobs": self.nobs}


def _design(y: np.ndarray, lag: int, deterministic: str,
            offset: int) -> tuple[np.ndarray, np.ndarray]:
    """ADF regression pieces for t = offset+1 .. T-1 (0-indexed levels).

    Dependent: dy_t; regressors: deterministic terms, y_{t-1} and
    ``lag`` lagged differences.
    """
    dy = np.diff(y)
    rows = np.arange(offset, dy.shape[0])  # dy index t-1 corresponds to dy_t
    dep = dy[rows]
    cols = [np.ones(rows.shape[0])]
    if deterministic == "ct":
        cols.append(rows.astype(float) + 1.0)
    cols.append(y[rows])  # y_{t-1}
    for i in range(1, lag + 1):
        cols.append(dy[rows - i])
    return np.column_stack(cols), dep


def adf_test(series, max_lag: int = 12, deterministic: str = "c",
             variable: str = "") -> AdfResult:
    """ADF t-test on the lagged level, lag chosen by the Schwarz criterion.

    All candidate lags are compared on the same effective sample; the
    chosen lag is then refitted on its maximal sample.  Critical values
    come from the MacKinnon response surface.
    """
    y = np.asarray(series, dtype=np.float64).ravel()
    if deterministic not in ("c", "ct"):
        raise DataError(f"deterministic must be 'c' or 'ct', "
                        f"got {deterministic!r}")
    if y.shape[0] <= max_lag + 10:
        raise DataError(f"series too short ({y.shape[0]}) for "
                        f"max_lag={max_lag}")
    if np.ptp(y) == 0.0:
        raise ConstantSeriesError("series is constant")

    best = None
    for lag in range(max_lag + 1):
        x, dep = _design(y, lag, deterministic, offset=max_lag)
        coef, resid = ols(x, dep)
        n = dep.shape[0]
        ssr = float(resid @ resid)
        bic = n * np.log(ssr / n) + x.shape[1] * np.log(n)
        if best is None or bic < best[0]:
            best = (bic, lag)
    lag = best[1]

    x, dep = _design(y, lag, deterministic, offset=lag)
    coef, resid = ols(x, dep)
    n = dep.shape[0]
    ssr = float(resid @ resid)
    sigma2 = ssr / (n - x.shape[1])
    xtx_inv = np.linalg.inv(x.T @ x)
    level_pos = 1 if deterministic == "c" else 2
    se = np.sqrt(sigma2 * xtx_inv[level_pos, level_pos])
    stat = float(coef[level_pos] / se)
    cvs = adf_critical_values(n, deterministic)
    return AdfResult(statistic=stat, lag=lag, deterministic=deterministic,
                     critical_values=cvs,
                     rejected_at_5pct=bool(stat < cvs[0.05]), nobs=n,
                     variable=variable)
