"""
Fourier multipliers on T_lambda: dyadic projections, the fractional
propagator S_lambda(t), the lambda-rescaling and grid resampling.
"""
from __future__ import annotations

import logging
from typing import Callable, Dict, Iterable, Sequence, Union

import numpy as np

from fnls.spectral.torus import SpectralField, TorusSpec
from fnls.utils.errors import LatticeError

logger = logging.getLogger(__name__)

Band = Union[float, int, Sequence[tuple], Callable[[np.ndarray], np.ndarray]]


def dispersion_symbol(k, alpha: float) -> np.ndarray:
    """|k|^{2 alpha}, with the value 0 at k = 0 (floating dtype of k is kept)."""
    k = np.asarray(k)
    if not np.issubdtype(k.dtype, np.floating):
        k = k.astype(np.float64)
    return np.abs(k) ** (2.0 * alpha)


def dyadic_band(N: float) -> Callable[[np.ndarray], np.ndarray]:
    """Mask for P_N: N/2 < |k| <= N for N > 1, and |k| <= 1 for N <= 1."""
    N = float(N)

    def mask(k: np.ndarray) -> np.ndarray:
        ak = np.abs(k)
        if N <= 1:
            return ak <= 1.0
        return (ak > N / 2.0) & (ak <= N)

    return mask


def _band_mask(band: Band) -> Callable[[np.ndarray], np.ndarray]:
    if callable(band):
        return band
    if np.isscalar(band):
        return dyadic_band(float(band))
    intervals = [(float(lo), float(hi)) for lo, hi in band]

    def mask(k: np.ndarray) -> np.ndarray:
        out = np.zeros(k.shape, dtype=bool)
        for lo, hi in intervals:
            out |= (k >= lo) & (k <= hi)
        return out

    return mask


def project(f: SpectralField, band: Band) -> SpectralField:
    """Sharp Fourier cutoff onto a dyadic P_N, a union of closed intervals, or a mask callable."""
    keep = _band_mask(band)(f.spec.frequencies)
    return f.with_coeffs(np.where(keep, f.coeffs, 0.0))


def dyadic_scales(spec: TorusSpec) -> list:
    """N = 1, 2, 4, ... until P_N covers K_max."""
    scales = [1.0]
    while scales[-1] < spec.k_max:
        scales.append(scales[-1] * 2.0)
    return scales


def littlewood_paley(f: SpectralField) -> Dict[float, SpectralField]:
    return {N: project(f, N) for N in dyadic_scales(f.spec)}


def propagate(f: SpectralField, t: float, alpha: float) -> SpectralField:
    """S_lambda(t): multiply u_hat(k) by exp(i |k|^{2 alpha} t)."""
    if t == 0:
        return f
    phase = np.exp(1j * dispersion_symbol(f.spec.frequencies, alpha) * t)
    return f.with_coeffs(f.coeffs * phase)


def _remap(coeffs: np.ndarray, src: TorusSpec, dst: TorusSpec) -> np.ndarray:
    """Copy coefficients index by index onto another grid; reject lost modes."""
    out = np.zeros(dst.num_points, dtype=np.complex128)
    modes = src.modes
    nz = coeffs != 0
    if np.any(nz):
        worst = int(np.max(np.abs(modes[nz])))
        if worst > dst.max_index:
            raise LatticeError(
                f"target grid P={dst.num_points} cannot resolve lattice index {worst}"
            )
    out[modes[nz] % dst.num_points] = coeffs[nz]
    return out


def resample(f: SpectralField, num_points: int) -> SpectralField:
    """Same field on a finer (or coarser, if nothing is lost) grid of the same torus."""
    dst = TorusSpec(f.spec.lam, int(num_points))
    return SpectralField(dst, _remap(f.coeffs, f.spec, dst), f.alpha)


def rescale_down(u0: SpectralField, lam: float, alpha: float, num_points: int = None) -> SpectralField:
    """
    u0 on T  ->  u0^lam(x) = lam^{-alpha} u0(x / lam) on T_lam.

    The lattice index is preserved: u0^lam_hat(k / lam) = lam^{1 - alpha} u0_hat(k).
    """
    if u0.spec.lam != 1.0:
        raise LatticeError(f"rescale_down expects a field on T (lambda = 1), got {u0.spec.lam}")
    dst = TorusSpec(float(lam), int(num_points or u0.spec.num_points))
    coeffs = _remap(u0.coeffs, u0.spec, dst) * lam ** (1.0 - alpha)
    return SpectralField(dst, coeffs, alpha)


def rescale_up(u_lam: SpectralField, alpha: float, num_points: int = None) -> SpectralField:
    """Inverse of rescale_down."""
    lam = u_lam.spec.lam
    dst = TorusSpec(1.0, int(num_points or u_lam.spec.num_points))
    coeffs = _remap(u_lam.coeffs, u_lam.spec, dst) * lam ** (alpha - 1.0)
    return SpectralField(dst, coeffs, alpha)
