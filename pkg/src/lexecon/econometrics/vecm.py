"""Mixed vector error correction model.

The cointegration space mixes two kinds of relations: rows estimated by
the Johansen procedure on the unit-root block (normalized by the leading
square block and zero on the stationary variables), and one identity row
per stationary variable so stationary series enter the error-correction
term as their own lagged level.  Given that space, loadings, short-run
coefficients and the intercept are estimated by equation-wise least
squares.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from lexecon.econometrics._common import lagged_design, ols
from lexecon.econometrics.johansen import johansen_trace
from lexecon.econometrics.panel import MacroPanel
from lexecon.errors import DataError, NumericalError
from lexecon.extrapolation import save_npz

_MODEL_FORMAT = 1


@dataclass(frozen=True)
class VecmSpec:
    """Cointegration structure: Johansen rank plus identity relations."""

    lag: int
    rank: int
    stationary: tuple[str, ...] = ()


@dataclass
class VecmModel:
    """Estimated error-correction system."""

    variable_names: tuple[str, ...]
    spec: VecmSpec
    beta: np.ndarray = field(repr=False)       # K x R cointegration vectors
    alpha: np.ndarray = field(repr=False)      # K x R adjustment loadings
    gammas: np.ndarray = field(repr=False)     # (lag-1, K, K) short-run
    intercept: np.ndarray = field(repr=False)  # K
    sigma: np.ndarray = field(repr=False)      # residual covariance (MLE)
    residuals: np.ndarray = field(repr=False)  # T_eff x K
    sample: np.ndarray = field(repr=False)     # estimation sample, T x K
    months: tuple[str, ...] = ()

    @property
    def n_vars(self) -> int:
        return len(self.variable_names)

    @property
    def n_relations(self) -> int:
        return self.beta.shape[1]

    @property
    def nobs(self) -> int:
        return self.residuals.shape[0]

    def to_dict(self) -> dict:
        return {"variables": list(self.variable_names),
                "lag": self.spec.lag,
                "rank": self.spec.rank,
                "stationary": list(self.spec.stationary),
                "n_relations": self.n_relations,
                "nobs": self.nobs,
                "deterministic": "unrestricted constant",
                "beta": self.beta.tolist(),
                "alpha": self.alpha.tolist(),
                "short_run": self.gammas.tolist(),
                "intercept": self.intercept.tolist(),
                "sigma": self.sigma.tolist()}

    def save(self, path: str | Path) -> None:
        meta = {"format": _MODEL_FORMAT,
                "variables": list(self.variable_names),
                "lag": self.spec.lag, "rank": self.spec.rank,
                "stationary": list(self.spec.stationary),
                "months": list(self.months)}
        save_npz(path,
                 meta=np.frombuffer(
                     json.dumps(meta, sort_keys=True).encode(), dtype=np.uint8),
                 beta=self.beta, alpha=self.alpha, gammas=self.gammas,
                 intercept=self.intercept, sigma=self.sigma,
                 residuals=self.residuals, sample=self.sample)

    @classmethod
    def load(cls, path: str | Path) -> "VecmModel":
        path = Path(path)
        if not path.is_file():
            raise DataError(f"model file not found: {path}")
        with np.load(path) as data:
            meta = json.loads(bytes(data["meta"]).decode())
            if meta.get("format") != _MODEL_FORMAT:
                raise DataError(f"{path}: unsupported model format")
            spec = VecmSpec(lag=meta["lag"], rank=meta["rank"],
                            stationary=tuple(meta["stationary"]))
            return cls(variable_names=tuple(meta["variables"]), spec=spec,
                       beta=data["beta"].copy(), alpha=data["alpha"].copy(),
                       gammas=data["gammas"].copy(),
                       intercept=data["intercept"].copy(),
                       sigma=data["sigma"].copy(),
                       residuals=data["residuals"].copy(),
                       sample=data["sample"].copy(),
                       months=tuple(meta["months"]))


def _build_beta(values: np.ndarray, names: tuple[str, ...],
                spec: VecmSpec) -> np.ndarray:
    """Cointegration matrix: Johansen block columns plus identity columns."""
    k = len(names)
    stat_idx = []
    for name in spec.stationary:
        if name not in names:
            raise DataError(f"stationary variable {name!r} not in panel")
        stat_idx.append(names.index(name))
    ns_idx = [i for i in range(k) if i not in stat_idx]
    if spec.rank < 0 or spec.rank > len(ns_idx):
        raise DataError(f"rank {spec.rank} exceeds the {len(ns_idx)} "
                        "non-stationary variables")
    r_total = spec.rank + len(stat_idx)
    if r_total > k:
        raise DataError("total relations exceed the variable count")
    beta = np.zeros((k, r_total))
    if spec.rank > 0:
        sub = johansen_trace(values[:, ns_idx], spec.lag,
                             [names[i] for i in ns_idx])
        vecs = sub.eigenvectors[:, :spec.rank]
        lead = vecs[:spec.rank, :spec.rank]
        if abs(np.linalg.det(lead)) < 1e-12:
            raise NumericalError(
                "leading square block of the Johansen vectors is singular")
        vecs = vecs @ np.linalg.inv(lead)
        for j, row in enumerate(ns_idx):
            beta[row, :spec.rank] = vecs[j]
    for j, row in enumerate(stat_idx):
        beta[row, spec.rank + j] = 1.0
    return beta


def estimate_values(values: np.ndarray, names: tuple[str, ...],
                    spec: VecmSpec, months: tuple[str, ...] = ()) -> VecmModel:
    """Estimate the mixed VECM on a raw T x K value matrix."""
    values = np.asarray(values, dtype=np.float64)
    t_obs, k = values.shape
    if k != len(names):
        raise DataError("value columns do not match variable names")
    p = spec.lag
    if p < 1:
        raise DataError("lag must be >= 1")
    n = t_obs - p
    if n < k * p + k + 5:
        raise DataError(f"too few observations ({t_obs}) for lag={p}")

    beta = _build_beta(values, names, spec)
    r_total = beta.shape[1]

    dy = np.diff(values, axis=0)
    dep = dy[p - 1:]                       # dy_t for t = p..T-1
    ect = values[p - 1:t_obs - 1] @ beta   # beta' y_{t-1}
    blocks = []
    if r_total > 0:
        blocks.append(ect)
    if p > 1:
        blocks.append(lagged_design(dy, p - 1))
    blocks.append(np.ones((n, 1)))
    x = np.hstack(blocks)

    coef, resid = ols(x, dep)
    alpha = coef[:r_total].T if r_total > 0 else np.zeros((k, 0))
    gammas = np.zeros((p - 1, k, k))
    for i in range(p - 1):
        gammas[i] = coef[r_total + i * k: r_total + (i + 1) * k].T
    intercept = coef[-1]
    sigma = (resid.T @ resid) / n
    return VecmModel(variable_names=tuple(names), spec=spec, beta=beta,
                     alpha=alpha, gammas=gammas, intercept=intercept,
                     sigma=sigma, residuals=resid, sample=values,
                     months=tuple(months))


def estimate_vecm(panel: MacroPanel, spec: VecmSpec) -> VecmModel:
    """Estimate the mixed VECM on a macro panel."""
    return estimate_values(panel.values, panel.variable_names, spec,
                           months=panel.months)


def vecm_to_var(model: VecmModel) -> tuple[np.ndarray, np.ndarray]:
    """Exact levels-VAR form: coefficient array (lag, K, K) and intercept."""
    k = model.n_vars
    p = model.spec.lag
    pi = model.alpha @ model.beta.T
    coefs = np.zeros((p, k, k))
    if p == 1:
        coefs[0] = np.eye(k) + pi
    else:
        coefs[0] = np.eye(k) + pi + model.gammas[0]
        for i in range(1, p - 1):
            coefs[i] = model.gammas[i] - model.gammas[i - 1]
        coefs[p - 1] = -model.gammas[p - 2]
    return coefs, model.intercept.copy()


def var_fitted(coefs: np.ndarray, intercept: np.ndarray,
               values: np.ndarray) -> np.ndarray:
    """One-step levels forecasts for t = lag..T-1."""
    p, k, _ = coefs.shape
    t_obs = values.shape[0]
    out = np.tile(intercept, (t_obs - p, 1))
    for i in range(p):
        out += values[p - 1 - i:t_obs - 1 - i] @ coefs[i].T
    return out


def vecm_fitted(model: VecmModel) -> np.ndarray:
    """One-step levels forecasts implied by the error-correction form."""
    values = model.sample
    p = model.spec.lag
    t_obs = values.shape[0]
    dy = np.diff(values, axis=0)
    prev = values[p - 1:t_obs - 1]
    d_hat = np.tile(model.intercept, (t_obs - p, 1))
    if model.n_relations > 0:
        d_hat += (prev @ model.beta) @ model.alpha.T
    for i in range(p - 1):
        d_hat += dy[p - 2 - i:t_obs - 2 - i] @ model.gammas[i].T
    return prev + d_hat


def simulate_var(coefs: np.ndarray, intercept: np.ndarray,
                 initial: np.ndarray, shocks: np.ndarray) -> np.ndarray:
    """Recursively generate levels from initial observations and shocks.

    Returns the full path of length ``initial rows + shock rows``.
    """
    p, k, _ = coefs.shape
    if initial.shape != (p, k):
        raise DataError(f"initial block must be {p} x {k}")
    n = shocks.shape[0]
    path = np.empty((p + n, k))
    path[:p] = initial
    for t in range(p, p + n):
        y = intercept + shocks[t - p]
        for i in range(p):
            y = y + coefs[i] @ path[t - 1 - i]
        path[t] = y
    return path
