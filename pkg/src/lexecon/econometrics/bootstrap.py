"""Hall bootstrap confidence bands for impulse responses.

Residual-based recursive bootstrap: centered residuals are resampled
with replacement, data are regenerated from the estimated model and its
actual initial observations, the model is re-estimated with the same
specification, and the IRF recomputed.  The band per response entry is
Hall's percentile-reflection interval ``[2t - q_hi, 2t - q_lo]``.
"""

from __future__ import annotations

import logging

import numpy as np

from lexecon._rng import derive_seed, stream
from lexecon.econometrics.irf import IrfResult, impulse_response
from lexecon.econometrics.panel import MacroPanel
from lexecon.econometrics.vecm import (VecmModel, estimate_values,
                                       simulate_var, vecm_to_var)
from lexecon.errors import DataError, LexeconError, NumericalError

log = logging.getLogger(__name__)


def hall_bootstrap_irf(model: VecmModel, panel: MacroPanel | None = None,
                       replications: int = 1000, level: float = 0.95,
                       horizon: int = 24, seed: int = 0,
                       max_dropped_fraction: float = 0.05) -> IrfResult:
    """IRFs with Hall bootstrap bands.

    Replication ``r`` draws from stream ``(seed, r)``, so results do not
    depend on scheduling.  Replications whose re-estimation fails are
    dropped and counted; more than ``max_dropped_fraction`` aborts.
    """
    if replications < 100:
        raise DataError("replications must be >= 100")
    if not 0.0 < level < 1.0:
        raise DataError("level must be in (0, 1)")
    values = panel.values if panel is not None else model.sample
    if values.shape != model.sample.shape or not np.allclose(
            values, model.sample):
        raise DataError("panel does not match the model's estimation sample")

    point = impulse_response(model, horizon)
    coefs, intercept = vecm_to_var(model)
    p = model.spec.lag
    initial = values[:p]
    resid = model.residuals
    centered = resid - resid.mean(axis=0)
    n = centered.shape[0]

    base = derive_seed(seed, "hall-bootstrap")
    draws = []
    n_dropped = 0
    for r in range(replications):
        rng = stream(base, r)
        shocks = centered[rng.integers(0, n, size=n)]
        synthetic = simulate_var(coefs, intercept, initial, shocks)
        try:
            re_model = estimate_values(synthetic, model.variable_names,
                                       model.spec)
            draws.append(impulse_response(re_model, horizon).responses)
        except LexeconError as exc:
            n_dropped += 1
            log.debug("replication %d dropped: %s", r, exc)
    if n_dropped > max_dropped_fraction * replications:
        raise NumericalError(
            f"{n_dropped}/{replications} bootstrap replications failed")

    stack = np.stack(draws)
    alpha = 1.0 - level
    q_lo = np.quantile(stack, alpha / 2.0, axis=0)
    q_hi = np.quantile(stack, 1.0 - alpha / 2.0, axis=0)
    return IrfResult(variable_names=model.variable_names, horizon=horizon,
                     responses=point.responses,
                     lower=2.0 * point.responses - q_hi,
                     upper=2.0 * point.responses - q_lo,
                     level=level, n_replications=len(draws),
                     n_dropped=n_dropped)
