"""
Almost-conservation tracking: E^1, E^2, mass and H^s along an evolution,
the E^2 - E^1 gap ratio, the doubling time of E^1 and the sextic identity
for the time derivative of E^2.
"""
from __future__ import annotations

import logging
from typing import Optional

import numpy as np
import pandas as pd

from fnls.dynamics.functionals import mass
from fnls.dynamics.integrator import EvolutionConfig, Trajectory, evolve, split_step
from fnls.imethod.energies import e1, e2, energy_derivative
from fnls.imethod.lattice import DEFAULT_BUDGET, lambda_cost
from fnls.imethod.multipliers import ModifiedEnergyParams, apply_I
from fnls.spectral.norms import sobolev_norm
from fnls.spectral.torus import SpectralField
from fnls.utils.errors import BudgetExceededError
from fnls.utils.parallel import ordered_map

logger = logging.getLogger(__name__)


def _check_budget(u: SpectralField, order: int, budget: float):
    cost = lambda_cost(u, order)
    if cost > budget:
        raise BudgetExceededError(
            f"Lambda_{order} over {len(u.support())} active modes costs ~{cost:.3g} > budget {budget:.3g}; "
            "reduce num_points, set band_limit, or raise budget",
            estimated_cost=cost,
            budget=budget,
        )


def energy_table(traj: Trajectory, params: ModifiedEnergyParams, budget: float = DEFAULT_BUDGET) -> pd.DataFrame:
    """Per-snapshot E^1, E^2, mass, ||I u||_{H^alpha} and |E^2 - E^1| / ||I u||^4_{H^alpha}."""
    # the largest active set along the trajectory bounds every Lambda_4 sum
    widest = max(traj.snapshots, key=lambda f: f.support().size)
    _check_budget(widest, 4, budget)

    def row(item):
        t, u = item
        iu = sobolev_norm(apply_I(u, params), params.alpha)
        first, second = e1(u, params), e2(u, params, budget)
        return {
            "t": float(t),
            "mass": mass(u),
            "e1": first,
            "e2": second,
            "iu_h_alpha": iu,
            "gap_ratio": abs(second - first) / iu ** 4 if iu > 0 else 0.0,
        }

    frame = pd.DataFrame(ordered_map(row, list(zip(traj.times, traj.snapshots))))
    for s, values in traj.hs_norms.items():
        frame[f"h_s_norm({s:g})"] = values
    return frame


def drift_summary(frame: pd.DataFrame) -> dict:
    e1_drift = float(np.max(np.abs(frame["e1"] - frame["e1"].iloc[0])))
    e2_drift = float(np.max(np.abs(frame["e2"] - frame["e2"].iloc[0])))
    proxy = float(np.max(frame["iu_h_alpha"])) ** 6
    return {
        "e1_drift": e1_drift,
        "e2_drift": e2_drift,
        "e2_drift_normalized": e2_drift / proxy if proxy > 0 else 0.0,
        "max_gap_ratio": float(np.max(frame["gap_ratio"])),
        "doubling_time": doubling_time(frame),
    }


def doubling_time(frame: pd.DataFrame) -> Optional[float]:
    """First snapshot time with E^1(u(t)) > 2 E^1(u(0)); None if it never happens."""
    above = np.flatnonzero(frame["e1"].to_numpy() > 2.0 * frame["e1"].iloc[0])
    return float(frame["t"].iloc[above[0]]) if above.size else None


def _step_difference(u: SpectralField, params: ModifiedEnergyParams, retained: np.ndarray, h: float,
                     budget: float) -> float:
    forward = e2(split_step(u, params.alpha, h, retained), params, budget)
    backward = e2(split_step(u, params.alpha, -h, retained), params, budget)
    return (forward - backward) / (2.0 * h)


def flow_derivative(
    u: SpectralField,
    params: ModifiedEnergyParams,
    retained: np.ndarray,
    h: float,
    extrapolate: bool = True,
    budget: float = DEFAULT_BUDGET,
) -> float:
    """
    d/dt E^2 through the state u by a centered difference over one split step of size +-h.

    Terms of the step map that are even in h cancel, so the plain difference is O(h^2)
    and the Richardson combination of h and h/2 is O(h^4).
    """
    coarse = _step_difference(u, params, retained, h, budget)
    if not extrapolate:
        return coarse
    fine = _step_difference(u, params, retained, 0.5 * h, budget)
    return (4.0 * fine - coarse) / 3.0


def energy_derivative_check(
    traj: Trajectory,
    params: ModifiedEnergyParams,
    samples: int = 10,
    budget: float = DEFAULT_BUDGET,
    step: Optional[float] = None,
    extrapolate: bool = True,
) -> pd.DataFrame:
    """
    Finite-difference d/dt E^2 at evenly spread snapshots against the sextic identity,
    both taken on the integrator's retained band. The step defaults to the trajectory's dt.
    """
    h = float(step if step is not None else traj.diagnostics["dt"])
    count = len(traj.times)
    picks = np.unique(np.rint(np.linspace(0, count - 1, min(int(samples), count))).astype(int))
    _check_budget(traj.snapshots[int(picks[0])], 6, budget)

    def row(i):
        u = traj.snapshots[int(i)]
        fd = flow_derivative(u, params, traj.retained, h, extrapolate, budget)
        exact = energy_derivative(u, params, traj.retained, budget)
        scale = max(abs(exact), abs(fd), 1e-300)
        return {"t": float(traj.times[i]), "step": h, "finite_difference": fd, "identity": exact,
                "rel_error": abs(fd - exact) / scale}

    return pd.DataFrame(ordered_map(row, picks.tolist()))


def track(u0: SpectralField, evo: EvolutionConfig, params: ModifiedEnergyParams,
          budget: float = DEFAULT_BUDGET) -> dict:
    traj = evolve(u0, evo)
    frame = energy_table(traj, params, budget)
    summary = drift_summary(frame)
    logger.info(
        "N=%g: E1 drift %.3e, E2 drift %.3e, max gap ratio %.3e",
        params.N, summary["e1_drift"], summary["e2_drift"], summary["max_gap_ratio"],
    )
    return {"trajectory": traj, "table": frame, "summary": summary}
