import logging
from dataclasses import dataclass

import numpy as np
from scipy import stats

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    stderr: float
    ci95: tuple

    def to_dict(self) -> dict:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "stderr": self.stderr,
            "ci95": list(self.ci95),
        }


def fit_loglog_slope(x, y) -> SlopeFit:
    """Least-squares slope of log y against log x with a 95% confidence interval."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 2 or x.size != y.size:
        raise ValueError("need at least two (x, y) pairs of equal length")
    if np.any(x <= 0) or np.any(y <= 0):
        raise ValueError("log-log fit needs positive data")
    res = stats.linregress(np.log(x), np.log(y))
    dof = x.size - 2
    if dof > 0:
        half = float(stats.t.ppf(0.975, dof) * res.stderr)
    else:
        half = float("nan")
    fit = SlopeFit(
        slope=float(res.slope),
        intercept=float(res.intercept),
        stderr=float(res.stderr),
        ci95=(float(res.slope) - half, float(res.slope) + half),
    )
    logger.debug("log-log fit over %d points: slope=%.4f ± %.4f", x.size, fit.slope, fit.stderr)
    return fit
