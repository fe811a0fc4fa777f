"""Johansen trace test for cointegration rank (unrestricted constant)."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from lexecon.econometrics._common import lagged_design, ols
from lexecon.econometrics.critical_values import (
    JOHANSEN_LEVELS, johansen_trace_critical_values)
from lexecon.errors import DataError, NumericalError


@dataclass(frozen=True)
class JohansenResult:
    variable_names: tuple[str, ...]
    eigenvalues: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)  # columns, beta' S11 beta = I
    trace_stats: np.ndarray = field(repr=False)   # per rank hypothesis 0..K-1
    critical_values: np.ndarray = field(repr=False)  # (K, 3) at 90/95/99%
    selected_rank: int = 0
    lag: int = 1
    nobs: int = 0
    deterministic: str = "c"

    def to_dict(self) -> dict:
        levels = [f"{int(round(q * 100))}%" for q in JOHANSEN_LEVELS]
        return {"variables": list(self.variable_names),
                "lag": self.lag, "nobs": self.nobs,
                "deterministic": self.deterministic,
                "selected_rank": self.selected_rank,
                "eigenvalues": [float(v) for v in self.eigenvalues],
                "trace": [{"rank": r, "statistic": float(s),
                           **{lv: float(c) for lv, c in
                              zip(levels, self.critical_values[r])}}
                          for r, s in enumerate(self.trace_stats)]}


def johansen_trace(values: np.ndarray, lag: int,
                   variable_names=None) -> JohansenResult:
    """Reduced-rank regression eigenvalues and the trace statistic.

    ``lag`` is the VAR order in levels, so ``lag - 1`` lagged differences
    enter the auxiliary regressions together with an unrestricted
    constant.  The rank is selected by the first hypothesis not rejected
    at the 5% level.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 2 or values.shape[1] < 2:
        raise DataError("need a T x K matrix with K >= 2")
    if lag < 1:
        raise DataError("lag must be >= 1")
    t_obs, k = values.shape
    n = t_obs - lag
    if n < k * lag + k + 10:
        raise DataError(f"too few observations ({t_obs}) for lag={lag}")
    names = tuple(variable_names) if variable_names else tuple(
        f"y{i}" for i in range(k))

    dy = np.diff(values, axis=0)              # rows: dy_1 .. dy_{T-1}
    dep = dy[lag - 1:]                        # dy_t, t = lag..T-1
    lagged_level = values[lag - 1:t_obs - 1]  # y_{t-1}
    z = [np.ones((n, 1))]
    if lag > 1:
        z.append(lagged_design(dy, lag - 1))  # dy_{t-1} .. dy_{t-lag+1}
    z = np.hstack(z)

    _, r0 = ols(z, dep)
    _, r1 = ols(z, lagged_level)
    s00 = (r0.T @ r0) / n
    s01 = (r0.T @ r1) / n
    s11 = (r1.T @ r1) / n
    try:
        c11 = np.linalg.cholesky(s11)
        s00_inv = np.linalg.inv(s00)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"singular moment matrix: {exc}") from None
    c11_inv = np.linalg.inv(c11)
    m = c11_inv @ s01.T @ s00_inv @ s01 @ c11_inv.T
    eigval, eigvec = np.linalg.eigh((m + m.T) / 2.0)
    order = np.argsort(eigval)[::-1]
    eigval = np.clip(eigval[order], 0.0, 1.0 - 1e-12)
    beta = c11_inv.T @ eigvec[:, order]

    log_terms = np.log(1.0 - eigval)
    trace = -n * np.cumsum(log_terms[::-1])[::-1]
    cvs = np.vstack([johansen_trace_critical_values(k - r) for r in range(k)])
    selected = k
    for r in range(k):
        if trace[r] < cvs[r, 1]:  # 95% column
            selected = r
            break
    return JohansenResult(variable_names=names, eigenvalues=eigval,
                          eigenvectors=beta, trace_stats=trace,
                          critical_values=cvs, selected_rank=selected,
                          lag=lag, nobs=n)
