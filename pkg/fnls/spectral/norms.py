import numpy as np

from fnls.spectral.torus import SpectralField
from fnls.utils.errors import LatticeError


def lp_norm(f: SpectralField, p: float) -> float:
    """Trapezoid quadrature of the L^p norm on the collocation grid; p = inf takes the max."""
    if p == np.inf:
        return float(np.max(np.abs(f.samples()))) if f.spec.num_points else 0.0
    if not p >= 1:
        raise LatticeError(f"L^p norm requires p >= 1, got {p}")
    if p == 2:
        return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2) / f.spec.volume))
    vals = np.abs(f.samples()) ** p
    return float((f.spec.dx * np.sum(vals)) ** (1.0 / p))


def sobolev_norm(f: SpectralField, s: float, homogeneous: bool = False) -> float:
    k = f.spec.frequencies
    if homogeneous and s == 0:
        weight = np.ones_like(k)
    elif homogeneous:
        # the zero mode carries no homogeneous weight
        weight = np.zeros_like(k)
        nz = k != 0
        weight[nz] = np.abs(k[nz]) ** (2.0 * s)
    else:
        weight = (1.0 + k * k) ** s
    return float(np.sqrt(np.sum(weight * np.abs(f.coeffs) ** 2) / f.spec.volume))
