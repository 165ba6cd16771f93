"""
Growth of the first Picard iterate on frequency-shifted block data.

For u0 = e^{inx} n^{(a-1)/2 - s} sum_{k <= l_n} e^{ikx} the cubic Duhamel term satisfies
    ||A_3(u0)(t)||_{H^s}  >~  t n^{1 - a - 2s},
so below s = (1 - a)/2 the data-to-solution map cannot be C^3 in H^s.
"""
from __future__ import annotations

import logging
from typing import Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

from fnls.dynamics.duhamel import duhamel_nonlinear
from fnls.illposed.data import build_illposed_data
from fnls.spectral.norms import sobolev_norm
from fnls.utils.errors import ConfigError, PreconditionError
from fnls.utils.fitting import fit_loglog_slope
from fnls.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

MAX_PICARD_TIME = 0.1
PICARD_COLUMNS = ["n", "l_n", "t", "hs_norm", "predicted_exponent", "fitted_exponent"]


def predicted_exponent(s: float, alpha: float) -> float:
    return 1.0 - alpha - 2.0 * s


def staircase_factor(n: int, l_n: int, alpha: float) -> float:
    """
    ((l_n + 1) / n^{1-a})^{5/2}: how far the integer block length sits from n^{1-a}.
    The l^2 mass of the cubic self-convolution of a length-(l+1) block scales like (l+1)^{5/2}.
    """
    return ((l_n + 1) / n ** (1.0 - alpha)) ** 2.5


def picard_norm(n: int, s: float, alpha: float, t: float, quad_nodes: int = 64) -> dict:
    datum = build_illposed_data(n, s, alpha)
    iterate = duhamel_nonlinear(datum.field, t, alpha, quad_nodes=quad_nodes)
    hs = sobolev_norm(iterate, s)
    logger.debug("n=%d l_n=%d P=%d: ||u0||_Hs=%.4f ||A3||_Hs=%.6g",
                 n, datum.l_n, datum.field.spec.num_points, datum.hs_norm, hs)
    return {
        "n": int(n),
        "l_n": datum.l_n,
        "t": float(t),
        "datum_hs_norm": datum.hs_norm,
        "hs_norm": hs,
        "staircase": staircase_factor(n, datum.l_n, alpha),
    }


def check_picard_time(t: float):
    if not 0 < t <= MAX_PICARD_TIME:
        raise PreconditionError(f"Picard growth needs 0 < t <= {MAX_PICARD_TIME}, got {t}")


def picard_growth_experiment(
    s: float,
    alpha: float,
    n_list: Sequence[int],
    t: float = 0.05,
    quad_nodes: int = 64,
    progress: bool = False,
) -> dict:
    """
    Per-n H^s norms of the first Picard iterate with raw and block-length corrected log-log slopes.
    Returns {"table": DataFrame, "raw_fit", "fit", "predicted_exponent", "fitted_exponent", "correction"}.
    """
    check_picard_time(t)
    n_list = [int(n) for n in n_list]
    if len(n_list) < 2 or any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ConfigError(f"n_list must hold at least two strictly increasing integers, got {n_list}")

    rows = ordered_map(lambda n: picard_norm(n, s, alpha, t, quad_nodes),
                       tqdm(n_list, desc="picard", disable=not progress))
    frame = pd.DataFrame(rows)
    raw_fit = fit_loglog_slope(frame["n"], frame["hs_norm"])
    fit = fit_loglog_slope(frame["n"], frame["hs_norm"] / frame["staircase"])
    predicted = predicted_exponent(s, alpha)
    frame["predicted_exponent"] = predicted
    frame["fitted_exponent"] = fit.slope
    logger.info("Picard growth s=%g alpha=%g: raw slope %.4f, corrected %.4f, predicted %.4f",
                s, alpha, raw_fit.slope, fit.slope, predicted)
    return {
        "table": frame,
        "raw_fit": raw_fit,
        "fit": fit,
        "predicted_exponent": predicted,
        "fitted_exponent": fit.slope,
        "correction": raw_fit.slope - fit.slope,
    }


def picard_time_linearity(n: int, s: float, alpha: float, ts: Sequence[float], quad_nodes: int = 64) -> dict:
    """Slope of log ||A_3(u0)(t)||_{H^s} against log t at fixed n; close to 1 for small t."""
    ts = [float(t) for t in ts]
    for t in ts:
        check_picard_time(t)
    datum = build_illposed_data(n, s, alpha)
    norms = [sobolev_norm(duhamel_nonlinear(datum.field, t, alpha, quad_nodes=quad_nodes), s) for t in ts]
    frame = pd.DataFrame({"t": ts, "hs_norm": norms})
    return {"table": frame, "fit": fit_loglog_slope(frame["t"], frame["hs_norm"])}
