"""
The smoothing multiplier g_1, its dilates g_N, m = g_N^{alpha - s} and I_N^beta.

g_1 is 1 on |x| <= 1 and |x|^{-1} on |x| > 2; the interpolation on (1, 2] is
pluggable. Reports carry the variant id so fitted exponents can be compared
across interpolants.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fnls.spectral.norms import sobolev_norm
from fnls.spectral.torus import SpectralField
from fnls.utils.errors import ConfigError, PreconditionError

LOG2 = np.log(2.0)
DEFAULT_G1 = "quintic-log"


def _as_float(x):
    x = np.asarray(x)
    if not np.issubdtype(x.dtype, np.floating):
        x = x.astype(np.float64)
    return x


def _g1_quintic_log(ax):
    # exp(-h(y) y) with y = log|x| and h the quintic smoothstep on [0, log 2]
    y = np.log(ax)
    r = y / LOG2
    h = r ** 3 * (10.0 - 15.0 * r + 6.0 * r ** 2)
    return np.exp(-h * y)


def _g1_cubic_hermite(ax):
    # Hermite cubic in x through (1, 1, slope 0) and (2, 1/2, slope -1/4); C^1 only
    t = ax - 1.0
    h00 = 2.0 * t ** 3 - 3.0 * t ** 2 + 1.0
    h01 = -2.0 * t ** 3 + 3.0 * t ** 2
    h11 = t ** 3 - t ** 2
    return h00 + 0.5 * h01 - 0.25 * h11


G1_VARIANTS = {
    "quintic-log": _g1_quintic_log,
    "cubic-hermite": _g1_cubic_hermite,
}


def g1(x, variant: str = DEFAULT_G1):
    """Even, non-increasing in |x|, exact on the two outer branches."""
    try:
        bridge = G1_VARIANTS[variant]
    except KeyError:
        raise ConfigError(f"unknown g1 variant {variant!r}; available: {sorted(G1_VARIANTS)}")
    x = _as_float(x)
    scalar = x.ndim == 0
    ax = np.abs(np.atleast_1d(x))
    out = np.ones_like(ax)
    outer = ax > 2.0
    mid = (ax > 1.0) & ~outer
    out[outer] = 1.0 / ax[outer]
    out[mid] = bridge(ax[mid])
    if scalar:
        return out[0]
    return out


@dataclass(frozen=True)
class ModifiedEnergyParams:
    alpha: float
    s: float
    N: float
    g1_variant: str = DEFAULT_G1

    def __post_init__(self):
        if not (0.5 < self.alpha < 1.0):
            raise ConfigError(f"alpha must lie in (1/2, 1), got {self.alpha}")
        if not (self.s < self.alpha):
            raise ConfigError(f"s={self.s} must be smaller than alpha={self.alpha}")
        if self.s < (1.0 - self.alpha) / 2.0 - 1e-12:
            raise ConfigError(f"s={self.s} is below (1 - alpha)/2 = {(1.0 - self.alpha) / 2.0}")
        if not self.N >= 1:
            raise ConfigError(f"N must be >= 1, got {self.N}")
        if self.g1_variant not in G1_VARIANTS:
            raise ConfigError(f"unknown g1 variant {self.g1_variant!r}")

    @property
    def beta(self) -> float:
        return self.alpha - self.s

    def with_N(self, N: float) -> "ModifiedEnergyParams":
        return ModifiedEnergyParams(self.alpha, self.s, float(N), self.g1_variant)


def g_N(k, N: float, variant: str = DEFAULT_G1):
    return g1(_as_float(k) / N, variant)


def m(k, params: ModifiedEnergyParams):
    """m(k) = g_1(k / N)^{alpha - s}."""
    return g_N(k, params.N, params.g1_variant) ** params.beta


def apply_I(f: SpectralField, params: ModifiedEnergyParams, beta_override: float = None) -> SpectralField:
    beta = params.beta if beta_override is None else float(beta_override)
    if beta < 0:
        raise PreconditionError(f"I_N^beta requires beta >= 0, got {beta}")
    symbol = g_N(f.spec.frequencies, params.N, params.g1_variant) ** beta
    return f.with_coeffs(f.coeffs * symbol)


def sandwich_bounds(f: SpectralField, params: ModifiedEnergyParams, s0: float = None) -> dict:
    """
    Ratios of the smoothing bounds
        ||u||_{H^s0} <~ ||I u||_{H^{s0+beta}} <~ N^beta ||u||_{H^s0};
    both stay O(1) uniformly in N.
    """
    s0 = params.s if s0 is None else s0
    beta = params.beta
    base = sobolev_norm(f, s0)
    smoothed = sobolev_norm(apply_I(f, params), s0 + beta)
    if base == 0:
        return {"lower": 0.0, "upper": 0.0}
    return {
        "lower": base / smoothed,
        "upper": smoothed / (params.N ** beta * base),
    }
