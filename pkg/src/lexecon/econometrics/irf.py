"""Orthogonalized impulse responses and variance decompositions."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from lexecon.econometrics.vecm import VecmModel, vecm_to_var
from lexecon.errors import (DataError, ExplosiveModelError,
                            NotPositiveDefiniteError)

log = logging.getLogger(__name__)


def cholesky_impact(model: VecmModel) -> np.ndarray:
    """Lower-triangular impact matrix of the residual covariance.

    A variable ordered last receives no contemporaneous effect from the
    other shocks.  A tiny ridge is tried once if the covariance is not
    positive definite.
    """
    sigma = model.sigma
    try:
        return np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError:
        ridge = 1e-10 * float(np.mean(np.diag(sigma)))
        log.warning("residual covariance not positive definite; "
                    "ridging by %.3e", ridge)
        try:
            return np.linalg.cholesky(sigma + ridge * np.eye(sigma.shape[0]))
        except np.linalg.LinAlgError:
            raise NotPositiveDefiniteError(
                "residual covariance not positive definite "
                "even after ridging") from None


def ma_coefficients(coefs: np.ndarray, horizon: int) -> np.ndarray:
    """Moving-average matrices Psi_0..Psi_horizon of a levels VAR."""
    p, k, _ = coefs.shape
    psi = np.zeros((horizon + 1, k, k))
    psi[0] = np.eye(k)
    for h in range(1, horizon + 1):
        acc = np.zeros((k, k))
        for i in range(1, min(h, p) + 1):
            acc += coefs[i - 1] @ psi[h - i]
        psi[h] = acc
    return psi


def companion_roots(coefs: np.ndarray) -> np.ndarray:
    """Moduli of the companion-matrix eigenvalues, descending."""
    p, k, _ = coefs.shape
    comp = np.zeros((k * p, k * p))
    comp[:k] = np.hstack([coefs[i] for i in range(p)])
    if p > 1:
        comp[k:, :k * (p - 1)] = np.eye(k * (p - 1))
    return np.sort(np.abs(np.linalg.eigvals(comp)))[::-1]


@dataclass(frozen=True)
class IrfResult:
    """Responses to one-standard-deviation orthogonalized shocks.

    ``responses[h, i, j]`` is variable i's response at horizon h to the
    shock of ``shock_names[j]``; optional Hall bands share the layout.
    """

    variable_names: tuple[str, ...]
    horizon: int
    responses: np.ndarray = field(repr=False)  # (horizon+1, K, n_shocks)
    shock_names: tuple[str, ...] = ()
    lower: np.ndarray | None = field(default=None, repr=False)
    upper: np.ndarray | None = field(default=None, repr=False)
    level: float | None = None
    n_replications: int = 0
    n_dropped: int = 0

    def __post_init__(self):
        if not self.shock_names:
            object.__setattr__(self, "shock_names", self.variable_names)

    def for_shock(self, shock: str) -> np.ndarray:
        """Response paths (horizon+1, K) to one named shock."""
        try:
            j = self.shock_names.index(shock)
        except ValueError:
            raise DataError(f"no shock named {shock!r}") from None
        return self.responses[:, :, j]

    def rows(self):
        """``horizon,response,shock,point[,lower,upper]`` rows."""
        for h in range(self.horizon + 1):
            for i, resp in enumerate(self.variable_names):
                for j, shock in enumerate(self.shock_names):
                    row = [h, resp, shock, float(self.responses[h, i, j])]
                    if self.lower is not None:
                        row += [float(self.lower[h, i, j]),
                                float(self.upper[h, i, j])]
                    yield tuple(row)


def impulse_response(model: VecmModel, horizon: int,
                     shock: str | None = None) -> IrfResult:
    """Orthogonalized IRFs out to ``horizon`` (horizon 0 = impact).

    ``shock`` restricts the result to one named shock column; by default
    every variable's shock is reported.
    """
    if horizon < 0:
        raise DataError("horizon must be >= 0")
    coefs, _ = vecm_to_var(model)
    with np.errstate(over="ignore", invalid="ignore"):
        psi = ma_coefficients(coefs, horizon)
        impact = cholesky_impact(model)
        responses = psi @ impact
    if not np.all(np.isfinite(responses)):
        roots = companion_roots(coefs)
        raise ExplosiveModelError(
            f"responses overflowed by horizon {horizon}; largest "
            f"companion roots: {np.round(roots[:3], 4).tolist()}")
    shock_names = model.variable_names
    if shock is not None:
        if shock not in model.variable_names:
            raise DataError(f"no variable named {shock!r}")
        j = model.variable_names.index(shock)
        responses = responses[:, :, j:j + 1]
        shock_names = (shock,)
    return IrfResult(variable_names=model.variable_names, horizon=horizon,
                     responses=responses, shock_names=shock_names)


@dataclass(frozen=True)
class FevdResult:
    """Forecast-error variance shares per (horizon, variable, shock)."""

    variable_names: tuple[str, ...]
    horizon: int
    shares: np.ndarray = field(repr=False)  # (horizon, K, K), horizons 1..H

    def rows(self):
        names = self.variable_names
        for h in range(1, self.horizon + 1):
            for i, var in enumerate(names):
                for j, shock in enumerate(names):
                    yield (h, var, shock, float(self.shares[h - 1, i, j]))


def fevd(model: VecmModel, horizon: int) -> FevdResult:
    """Variance decomposition from cumulated squared orthogonalized IRFs."""
    if horizon < 1:
        raise DataError("horizon must be >= 1")
    theta = impulse_response(model, horizon - 1).responses
    contrib = np.cumsum(theta ** 2, axis=0)         # (H, K, K)
    totals = contrib.sum(axis=2, keepdims=True)     # per variable, horizon
    if np.any(totals <= 0):
        raise NotPositiveDefiniteError(
            "a variable has zero forecast-error variance")
    return FevdResult(variable_names=model.variable_names, horizon=horizon,
                      shares=contrib / totals)
