"""Unit-root testing, cointegration, VECM estimation and shock analysis."""

from lexecon.econometrics.adf import AdfResult, adf_test
from lexecon.econometrics.bootstrap import hall_bootstrap_irf
from lexecon.econometrics.irf import (FevdResult, IrfResult, cholesky_impact,
                                      companion_roots, fevd, impulse_response,
                                      ma_coefficients)
from lexecon.econometrics.johansen import JohansenResult, johansen_trace
from lexecon.econometrics.lags import select_lag
from lexecon.econometrics.panel import MacroPanel, assemble_panel
from lexecon.econometrics.vecm import (VecmModel, VecmSpec, estimate_values,
                                       estimate_vecm, simulate_var,
                                       var_fitted, vecm_fitted, vecm_to_var)

__all__ = [
    "AdfResult", "adf_test", "hall_bootstrap_irf", "FevdResult", "IrfResult",
    "cholesky_impact", "companion_roots", "fevd", "impulse_response",
    "ma_coefficients", "JohansenResult", "johansen_trace", "select_lag",
    "MacroPanel", "assemble_panel", "VecmModel", "VecmSpec",
    "estimate_values", "estimate_vecm", "simulate_var", "var_fitted",
    "vecm_fitted", "vecm_to_var",
]
