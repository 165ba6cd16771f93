from fnls.spectral.norms import lp_norm, sobolev_norm
from fnls.spectral.operators import resample
from fnls.spectral.torus import SpectralField


def mass(f: SpectralField) -> float:
    """M(u) = ||u||_{L^2}."""
    return lp_norm(f, 2)


def quartic_integral(f: SpectralField) -> float:
    """||u||_{L^4}^4, exact for the stored trigonometric polynomial (evaluated on a doubled grid)."""
    padded = resample(f, 2 * f.spec.num_points)
    return lp_norm(padded, 4) ** 4


def energy(f: SpectralField, alpha: float) -> float:
    """E(u) = 1/2 ||(-Delta)^{alpha/2} u||^2 + 1/4 ||u||_{L^4}^4."""
    kinetic = sobolev_norm(f, alpha, homogeneous=True) ** 2
    return 0.5 * kinetic + 0.25 * quartic_integral(f)


def scaling_exponents(alpha: float) -> dict:
    """Scaling-critical s_c = 1/2 - alpha and pseudo-Galilean s_g = (1 - alpha) / 2."""
    return {"s_c": 0.5 - alpha, "s_g": (1.0 - alpha) / 2.0}
