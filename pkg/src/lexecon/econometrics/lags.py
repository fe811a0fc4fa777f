"""Levels-VAR lag order selection by the Schwarz criterion."""

from __future__ import annotations

import numpy as np

from lexecon.econometrics._common import lagged_design, ols
from lexecon.errors import DataError, NumericalError


def select_lag(values: np.ndarray, max_lag: int) -> int:
    """Lag (1..max_lag) of the levels VAR minimizing the Schwarz criterion.

    Every candidate is fitted on the common sample that drops the first
    ``max_lag`` observations, so the criteria are comparable; ties go to
    the smaller lag.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2:
        raise DataError("values must be a T x K matrix")
    t_obs, k = values.shape
    if max_lag < 1:
        raise DataError("max_lag must be >= 1")
    n = t_obs - max_lag
    if n < k * max_lag + k + 10:
        raise DataError(f"too few observations ({t_obs}) for "
                        f"max_lag={max_lag} on {k} variables")

    dep = values[max_lag:]
    full_lags = lagged_design(values, max_lag)  # rows t = max_lag..T-1
    best = None
    for p in range(1, max_lag + 1):
        x = np.hstack([np.ones((n, 1)), full_lags[:, :k * p]])
        _, resid = ols(x, dep)
        sigma = (resid.T @ resid) / n
        sign, logdet = np.linalg.slogdet(sigma)
        if sign <= 0:
            raise NumericalError(f"singular residual covariance at lag {p}")
        sc = logdet + np.log(n) / n * (p * k * k + k)
        if best is None or sc < best[0] - 1e-12:
            best = (sc, p)
    return best[1]
