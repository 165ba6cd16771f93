import logging

import numpy as np

from fnls.spectral.operators import dispersion_symbol
from fnls.spectral.torus import SpectralField
from fnls.utils.errors import ConfigError, LatticeError

logger = logging.getLogger(__name__)

QUAD_RULES = ("gauss", "trapezoid")


def _time_nodes(t: float, quad_nodes: int, rule: str):
    if rule == "gauss":
        x, w = np.polynomial.legendre.leggauss(quad_nodes)
        return 0.5 * t * (x + 1.0), 0.5 * t * w
    if rule == "trapezoid":
        nodes = np.linspace(0.0, t, quad_nodes)
        w = np.full(quad_nodes, t / (quad_nodes - 1))
        w[0] *= 0.5
        w[-1] *= 0.5
        return nodes, w
    raise ConfigError(f"unknown quadrature rule {rule!r}; available: {QUAD_RULES}")


def _check_cubic_resolved(u0: SpectralField):
    support = u0.support()
    if support.size == 0:
        return
    lo, hi = int(support[0]), int(support[-1])
    reach = max(abs(2 * lo - hi), abs(2 * hi - lo))
    if reach > u0.spec.max_index:
        raise LatticeError(
            f"cubic products of the datum reach index {reach} > {u0.spec.max_index}; "
            "increase num_points"
        )


def duhamel_nonlinear(
    u0: SpectralField,
    t: float,
    alpha: float,
    quad_nodes: int = 64,
    rule: str = "gauss",
) -> SpectralField:
    """First Picard iterate  i * int_0^t S(t - t') |S(t')u0|^2 S(t')u0 dt'."""
    if quad_nodes < 2:
        raise ConfigError("quad_nodes must be >= 2")
    spec = u0.spec
    if t == 0 or not np.any(u0.coeffs):
        return SpectralField.zeros(spec)
    _check_cubic_resolved(u0)

    nodes, weights = _time_nodes(float(t), int(quad_nodes), rule)
    omega = dispersion_symbol(spec.frequencies, alpha)
    # rows: quadrature nodes, columns: lattice slots
    forward = np.exp(1j * np.outer(nodes, omega))
    backward = np.exp(1j * np.outer(t - nodes, omega))
    v = (spec.num_points / spec.volume) * np.fft.ifft(u0.coeffs[None, :] * forward, axis=1)
    cubic = spec.dx * np.fft.fft((v.real ** 2 + v.imag ** 2) * v, axis=1)
    integral = np.sum(weights[:, None] * backward * cubic, axis=0)
    return SpectralField(spec, 1j * integral, alpha)
