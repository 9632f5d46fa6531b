"""Log-log power-law fits with confidence intervals."""

from __future__ import annotations

import numpy as np
from scipy import stats

__all__ = ["loglog_fit"]


def loglog_fit(x, y) -> dict:
    """Least-squares slope of log y vs log x with a 95% interval.

    Returns {slope, intercept, slope_ci, degenerate}; slope_ci is the
    half-width of the 95% confidence interval (Student t).  Degenerate
    inputs (fewer than 3 points, non-positive data, or zero variance)
    are flagged rather than fitted.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ok = (x > 0) & (y > 0) & np.isfinite(x) & np.isfinite(y)
    x, y = x[ok], y[ok]
    if x.size < 3 or np.ptp(np.log(x)) < 1e-14:
        return {
            "slope": np.nan, "intercept": np.nan,
            "slope_ci": np.nan, "degenerate": True,
        }
    lx, ly = np.log(x), np.log(y)
    res = stats.linregress(lx, ly)
    if not np.isfinite(res.stderr):
        ci = np.nan
        degenerate = np.ptp(ly) < 1e-13
    else:
        tcrit = stats.t.ppf(0.975, x.size - 2) if x.size > 2 else np.nan
        ci = float(tcrit * res.stderr)
        degenerate = False
    return {
        "slope": float(res.slope),
        "intercept": float(res.intercept),
        "slope_ci": ci,
        "degenerate": bool(degenerate),
    }
