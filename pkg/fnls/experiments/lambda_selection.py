"""
Choice of the rescaling parameter in the global argument.

For u0 in H^s(T) and I-method scale N, the rescaled datum u0^lam on T_lam with

    lam = N^{(alpha - s)/s} ||u0||_{H^s}^{1/s}

has modified energy E^1(u0^lam) of size lam^{1 - 2 alpha}.
"""
from __future__ import annotations

import logging
from typing import Sequence

import numpy as np
import pandas as pd

from fnls.imethod.energies import e1
from fnls.imethod.multipliers import DEFAULT_G1, ModifiedEnergyParams
from fnls.spectral.norms import sobolev_norm
from fnls.spectral.operators import rescale_down
from fnls.spectral.torus import SpectralField, TorusSpec
from fnls.utils.errors import ConfigError, LatticeError

logger = logging.getLogger(__name__)


def choose_lambda(u0: SpectralField, N: float, s: float, alpha: float) -> float:
    if not s > 0:
        raise ConfigError(f"lambda selection needs s > 0, got {s}")
    if u0.spec.lam != 1.0:
        raise LatticeError("lambda selection starts from a datum on T (lambda = 1)")
    norm = sobolev_norm(u0, s)
    return float(N ** ((alpha - s) / s) * norm ** (1.0 / s))


def rough_datum(spec: TorusSpec, s: float, delta: float, rng: np.random.Generator,
                max_index: int = None) -> SpectralField:
    """
    Random phases with |u_hat(k)|^2 ~ <k>^{-1 - 2s - 2 delta}: barely in H^s.
    Normalized to ||u0||_{H^s} = 1.
    """
    max_index = spec.num_points // 4 if max_index is None else int(max_index)
    if not spec.resolves(max_index):
        raise LatticeError(f"max_index={max_index} beyond the grid band of {spec}")
    modes = spec.modes
    keep = np.abs(modes) <= max_index
    weights = (1.0 + modes[keep].astype(float) ** 2) ** (-(1.0 + 2.0 * s + 2.0 * delta) / 4.0)
    coeffs = np.zeros(spec.num_points, dtype=np.complex128)
    coeffs[keep] = weights * np.exp(2j * np.pi * rng.random(int(keep.sum())))
    field = SpectralField(spec, coeffs)
    return field.scaled(1.0 / sobolev_norm(field, s))


def rescaled_energy(u0: SpectralField, N: float, s: float, alpha: float, g1_variant: str = DEFAULT_G1) -> dict:
    """lam, E^1(u0^lam) and the normalized E^1(u0^lam) lam^{2 alpha - 1}."""
    lam = choose_lambda(u0, N, s, alpha)
    u_lam = rescale_down(u0, lam, alpha)
    params = ModifiedEnergyParams(alpha, s, float(N), g1_variant)
    value = e1(u_lam, params)
    scaled = value * lam ** (2.0 * alpha - 1.0)
    logger.debug("N=%g: lambda=%.6g E1=%.6g E1*lambda^(2a-1)=%.6g", N, lam, value, scaled)
    return {"N": float(N), "lambda": lam, "e1": value, "e1_scaled": scaled}


def lambda_selection_table(u0: SpectralField, Ns: Sequence[float], s: float, alpha: float,
                           g1_variant: str = DEFAULT_G1) -> pd.DataFrame:
    return pd.DataFrame([rescaled_energy(u0, N, s, alpha, g1_variant) for N in Ns])
