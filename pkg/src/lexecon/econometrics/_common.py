"""Shared regression utilities for the econometrics stage."""

from __future__ import annotations

import numpy as np

from lexecon.errors import CollinearRegressorsError


def ols(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Least squares fit; returns (coefficients, residuals).

    Raises when the regressor matrix is rank deficient.
    """
    coef, _, rank, _ = np.linalg.lstsq(x, y, rcond=None)
    if rank < x.shape[1]:
        raise CollinearRegressorsError(
            f"regressor matrix has rank {rank} < {x.shape[1]} columns")
    return coef, y - x @ coef


def lagged_design(values: np.ndarray, lags: int) -> np.ndarray:
    """Stack ``[y_{t-1}, ..., y_{t-lags}]`` rows for t = lags .. T-1.

    ``values`` is T x K; the result is (T - lags) x (K * lags).
    """
    t_obs, k = values.shape
    if lags < 1 or lags >= t_obs:
        raise ValueError("lags must satisfy 1 <= lags < T")
    blocks = [values[lags - i:t_obs - i] for i in range(1, lags + 1)]
    return np.hstack(blocks)
