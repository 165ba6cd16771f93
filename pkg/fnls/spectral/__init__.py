"""
Discrete Fourier analysis on the rescaled torus T_lambda.

Coefficients follow the un-normalized convention
    u_hat(k) = integral_0^{2 pi lambda} exp(-i k x) u(x) dx,
so every norm inserts the counting weight 1/(2 pi lambda) explicitly.
"""
from fnls.spectral.torus import TorusSpec, SpectralField, synthesize
from fnls.spectral.norms import lp_norm, sobolev_norm
from fnls.spectral.operators import (
    dispersion_symbol,
    dyadic_band,
    dyadic_scales,
    littlewood_paley,
    project,
    propagate,
    rescale_down,
    rescale_up,
    resample,
)

__all__ = [
    "TorusSpec",
    "SpectralField",
    "synthesize",
    "lp_norm",
    "sobolev_norm",
    "dispersion_symbol",
    "dyadic_band",
    "dyadic_scales",
    "littlewood_paley",
    "project",
    "propagate",
    "rescale_down",
    "rescale_up",
    "resample",
]
