from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from fnls.spectral.norms import sobolev_norm
from fnls.spectral.torus import SpectralField, TorusSpec
from fnls.utils.errors import ConfigError, LatticeError


def block_length(n: int, alpha: float) -> int:
    """l_n = floor(n^{1 - alpha})."""
    return int(math.floor(n ** (1.0 - alpha) + 1e-12))


def block_amplitude(n: int, s: float, alpha: float) -> float:
    return n ** ((alpha - 1.0) / 2.0 - s)


def power_of_two_grid(max_index: int, minimum: int = 16) -> TorusSpec:
    """Smallest power-of-two grid on T whose band |m| <= P/2 - 1 reaches max_index."""
    size = minimum
    while size // 2 - 1 < max_index:
        size *= 2
    return TorusSpec(1.0, size)


@dataclass(frozen=True, eq=False)
class IllposedDatum:
    """u0 = e^{inx} f,  f = n^{(alpha-1)/2 - s} sum_{k=0}^{l_n} e^{ikx}."""

    n: int
    s: float
    alpha: float
    l_n: int
    amplitude: float
    field: SpectralField

    @property
    def hs_norm(self) -> float:
        return sobolev_norm(self.field, self.s)


def build_illposed_data(n: int, s: float, alpha: float, spec: TorusSpec = None) -> IllposedDatum:
    if n < 1:
        raise ConfigError(f"carrier frequency n must be positive, got {n}")
    l_n = block_length(n, alpha)
    # default grid leaves room for the cubic interaction n - l .. n + 2l
    spec = spec or power_of_two_grid(n + 2 * l_n + 1)
    if spec.lam != 1.0:
        raise LatticeError("the ill-posedness datum lives on T (lambda = 1)")
    if not spec.resolves(n + l_n):
        raise LatticeError(f"grid P={spec.num_points} does not resolve frequency n + l_n = {n + l_n}")
    amplitude = block_amplitude(n, s, alpha)
    coeffs = np.zeros(spec.num_points, dtype=np.complex128)
    coeffs[np.arange(n, n + l_n + 1) % spec.num_points] = spec.volume * amplitude
    return IllposedDatum(int(n), float(s), float(alpha), l_n, amplitude, SpectralField(spec, coeffs, alpha))
