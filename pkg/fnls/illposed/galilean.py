"""
Approximate Galilean identity for the fractional group and convolution dominance.

    S(t) M_n f = e^{i n^{2a} t} M_n G_{bt} f + w,    b = 2 a n^{2a-1},
    |w_hat(k, t)| <= |t| l^2 n^{2a-2} |f_hat(k)|   for supp f_hat in [-l, l], n >= l.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from fnls.illposed.data import power_of_two_grid
from fnls.spectral.norms import lp_norm
from fnls.spectral.operators import resample
from fnls.spectral.torus import SpectralField, TorusSpec
from fnls.utils.errors import PreconditionError

logger = logging.getLogger(__name__)

DOMINANCE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class GalileanReport:
    n: int
    l: int
    t: float
    alpha: float
    w: SpectralField
    max_ratio: float

    def to_dict(self) -> dict:
        return {"n": self.n, "l": self.l, "t": self.t, "alpha": self.alpha, "max_ratio": self.max_ratio}


def galilean_error(f: SpectralField, n: int, t: float, alpha: float, l: int = None) -> GalileanReport:
    support = f.support()
    reach = int(np.max(np.abs(support))) if support.size else 0
    l = reach if l is None else int(l)
    if reach > l:
        raise PreconditionError(f"f_hat has mode {reach} outside [-{l}, {l}]")
    if n < l:
        raise PreconditionError(f"carrier n={n} must be >= l={l}")

    k = support.astype(float)
    fk = f.coeffs[support % f.spec.num_points]
    two_a = 2.0 * alpha
    x = k / n
    # n^{2a} r_k with r_k = (1 + k/n)^{2a} - 1 - 2a k/n >= 0, kept free of cancellation
    r = np.expm1(two_a * np.log1p(x)) - two_a * x
    theta = t * n ** two_a * r
    b = two_a * n ** (two_a - 1.0)
    approx_phase = np.exp(1j * (n ** two_a + k * b) * t)
    wk = fk * approx_phase * (2j * np.sin(theta / 2.0)) * np.exp(0.5j * theta)

    bound = abs(t) * l ** 2 * n ** (two_a - 2.0) * np.abs(fk)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(bound > 0, np.abs(wk) / np.where(bound > 0, bound, 1.0),
                         np.where(np.abs(wk) > 0, np.inf, 0.0))
    max_ratio = float(np.max(ratio)) if ratio.size else 0.0

    spec = power_of_two_grid(n + l)
    coeffs = np.zeros(spec.num_points, dtype=np.complex128)
    coeffs[(n + support) % spec.num_points] = wk
    return GalileanReport(int(n), l, float(t), float(alpha), SpectralField(spec, coeffs, alpha), max_ratio)


@dataclass(frozen=True)
class DominanceReport:
    p: int
    q: int
    lhs: float
    rhs: float

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs * (1.0 + 1e-10) + 1e-300

    def to_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "lhs": self.lhs, "rhs": self.rhs,
                "slack": self.slack, "holds": self.holds}


def _check_dominance_preconditions(f: SpectralField, g: SpectralField):
    if f.spec != g.spec:
        raise PreconditionError("f and g must live on the same torus")
    fk, gk = f.coeffs, g.coeffs
    scale = max(float(np.max(np.abs(fk))), 1e-300)
    tol = DOMINANCE_TOL * scale
    bad = np.flatnonzero((np.abs(fk.imag) > tol) | (fk.real < -tol))
    if bad.size:
        k = int(f.spec.modes[bad[0]])
        raise PreconditionError(f"f_hat({k}) = {fk[bad[0]]} is not a non-negative real")
    bad = np.flatnonzero(np.abs(gk) > fk.real + tol)
    if bad.size:
        k = int(f.spec.modes[bad[0]])
        raise PreconditionError(f"|g_hat({k})| = {abs(gk[bad[0]]):.6g} exceeds f_hat({k}) = {fk[bad[0]].real:.6g}")


def convolution_dominance_check(f: SpectralField, g: SpectralField, p: int, q: int) -> DominanceReport:
    """||f^p g^q||_2 <= ||f^{p+q}||_2 when |g_hat| <= f_hat pointwise."""
    if p < 1 or q < 1:
        raise PreconditionError("p and q must be positive integers")
    _check_dominance_preconditions(f, g)
    support = np.concatenate([f.support(), g.support()])
    if support.size == 0:
        return DominanceReport(p, q, 0.0, 0.0)
    reach = (p + q) * int(np.max(np.abs(support)))
    size = f.spec.num_points
    while size // 2 - 1 < reach:
        size *= 2
    fs = resample(f, size)
    gs = resample(g, size)
    spec: TorusSpec = fs.spec
    fx, gx = fs.samples(), gs.samples()
    lhs = lp_norm(SpectralField.from_samples(spec, fx ** p * gx ** q), 2)
    rhs = lp_norm(SpectralField.from_samples(spec, fx ** (p + q)), 2)
    return DominanceReport(int(p), int(q), lhs, rhs)


def random_dominance_pair(rng: np.random.Generator, modes: int = 6, num_points: int = 64):
    """f_hat >= 0 on a random support in [-modes, modes]; g_hat = f_hat * r e^{i theta}, 0 <= r <= 1."""
    spec = TorusSpec(1.0, num_points)
    idx = np.arange(-modes, modes + 1)
    active = idx[rng.random(idx.size) < 0.6]
    if active.size == 0:
        active = idx[:1]
    fk = np.zeros(num_points, dtype=np.complex128)
    fk[active % num_points] = spec.volume * rng.random(active.size)
    radii = rng.random(num_points)
    gk = fk * radii * np.exp(2j * np.pi * rng.random(num_points))
    return SpectralField(spec, fk), SpectralField(spec, gk)


def random_dominance_instances(count: int, rng: np.random.Generator, modes: int = 6, num_points: int = 64):
    for _ in range(int(count)):
        yield random_dominance_pair(rng, modes, num_points)
