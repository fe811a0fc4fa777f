"""Tabulated critical values for the unit-root and cointegration tests.

Sources:

* Dickey-Fuller t-test: response-surface coefficients from MacKinnon,
  "Critical Values for Cointegration Tests", Queen's Economics Dept.
  working paper 1227 (2010), Table 2, one variable; the critical value
  at sample size T is ``b0 + b1/T + b2/T^2 + b3/T^3``.
* Johansen trace test: asymptotic quantiles for the case with an
  unrestricted constant, from MacKinnon, Haug and Michelis, "Numerical
  distribution functions of likelihood ratio tests for cointegration",
  J. Applied Econometrics 14 (1999), for up to 12 common trends.
"""

from __future__ import annotations

import numpy as np

from lexecon.errors import DataError

# level -> (b0, b1, b2, b3); constant-only regression
_ADF_CONST = {
    0.01: (-3.43035, -6.5393, -16.786, -79.433),
    0.05: (-2.86154, -2.8903, -4.234, -40.040),
    0.10: (-2.56677, -1.5384, -2.809, 0.0),
}

# level -> (b0, b1, b2, b3); constant + linear trend
_ADF_TREND = {
    0.01: (-3.95877, -9.0531, -28.428, -134.155),
    0.05: (-3.41049, -4.3904, -9.036, -45.374),
    0.10: (-3.12705, -2.5856, -3.925, -22.380),
}


def adf_critical_values(nobs: int, deterministic: str = "c") -> dict:
    """Dickey-Fuller critical values at the 1/5/10% levels."""
    if deterministic == "c":
        table = _ADF_CONST
    elif deterministic == "ct":
        table = _ADF_TREND
    else:
        raise DataError(f"unknown deterministic spec {deterministic!r}")
    t = float(nobs)
    return {level: b0 + b1 / t + b2 / t**2 + b3 / t**3
            for level, (b0, b1, b2, b3) in table.items()}


# rows: number of common trends (K - r) = 1..12; columns: 90%, 95%, 99%
_JOHANSEN_TRACE_CONST = np.array([
    [2.7055, 3.8415, 6.6349],
    [13.4294, 15.4943, 19.9349],
    [27.0669, 29.7961, 35.4628],
    [44.4929, 47.8545, 54.6815],
    [65.8202, 69.8189, 77.8202],
    [91.1090, 95.7542, 104.9637],
    [120.3673, 125.6185, 135.9825],
    [153.6341, 159.5290, 171.0905],
    [190.8714, 197.3772, 210.0366],
    [232.1030, 239.2468, 253.2526],
    [277.3740, 285.1402, 300.2821],
    [326.5354, 334.9795, 351.2150],
])

JOHANSEN_LEVELS = (0.90, 0.95, 0.99)


def johansen_trace_critical_values(n_trends: int) -> np.ndarray:
    """Trace-test critical values (90/95/99%) for ``n_trends`` common trends."""
    if not 1 <= n_trends <= len(_JOHANSEN_TRACE_CONST):
        raise DataError(
            f"trace critical values tabulated for 1..12 trends, "
            f"got {n_trends}")
    return _JOHANSEN_TRACE_CONST[n_trends - 1].copy()
