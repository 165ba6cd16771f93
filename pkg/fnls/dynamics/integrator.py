"""
Strang splitting for  d/dt u = i (-Delta)^alpha u + i |u|^2 u  on T_lambda.

Both sub-flows are exact: the linear one is the unimodular multiplier
exp(i |k|^{2 alpha} dt), the nonlinear one the pointwise phase
u -> exp(i |u|^2 dt) u (|u| is constant along it).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd

from fnls.dynamics.functionals import energy, mass
from fnls.spectral.norms import sobolev_norm
from fnls.spectral.operators import dispersion_symbol
from fnls.spectral.torus import SpectralField, TorusSpec
from fnls.utils.errors import ConfigError, LatticeError, NumericalAbort

logger = logging.getLogger(__name__)

SCHEMES = ("strang",)


@dataclass(frozen=True)
class EvolutionConfig:
    alpha: float
    dt: float
    t_end: float
    dealias: bool = True
    scheme: str = "strang"
    snapshots: int = 32
    band_limit: Optional[float] = None
    hs_orders: Tuple[float, ...] = ()

    def __post_init__(self):
        if not (0.5 < self.alpha <= 1.0):
            raise ConfigError(f"alpha must lie in (1/2, 1], got {self.alpha}")
        if not (self.dt > 0 and self.t_end > 0):
            raise ConfigError("dt and t_end must be positive")
        if not self.dt < self.t_end:
            raise ConfigError(f"dt={self.dt} must be smaller than t_end={self.t_end}")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}; available: {SCHEMES}")
        if self.snapshots < 2:
            raise ConfigError("at least two snapshots (start and end) are required")
        if self.band_limit is not None and self.band_limit <= 0:
            raise ConfigError("band_limit must be positive")
        object.__setattr__(self, "hs_orders", tuple(float(s) for s in self.hs_orders))

    def retained_modes(self, spec: TorusSpec) -> np.ndarray:
        """Boolean mask of lattice slots kept after each nonlinear step."""
        keep = np.abs(spec.modes) <= spec.max_index
        if self.dealias:
            keep &= np.abs(spec.modes) <= spec.num_points // 3
        if self.band_limit is not None:
            keep &= np.abs(spec.frequencies) <= self.band_limit + 1e-12
        return keep

    def stiffness(self, spec: TorusSpec) -> float:
        return float(self.dt * spec.k_max ** (2.0 * self.alpha))


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    snapshots: Tuple[SpectralField, ...]
    mass: np.ndarray
    energy: np.ndarray
    hs_norms: Dict[float, np.ndarray] = field(default_factory=dict)
    diagnostics: Dict[str, float] = field(default_factory=dict)
    retained: Optional[np.ndarray] = None

    @property
    def spec(self) -> TorusSpec:
        return self.snapshots[0].spec

    @property
    def final(self) -> SpectralField:
        return self.snapshots[-1]

    def to_frame(self) -> pd.DataFrame:
        data = {"t": self.times, "mass": self.mass, "energy": self.energy}
        for s, values in self.hs_norms.items():
            data[f"h_s_norm({s:g})"] = values
        return pd.DataFrame(data)


def _step_count(cfg: EvolutionConfig) -> Tuple[int, float]:
    n = int(round(cfg.t_end / cfg.dt))
    if n >= 1 and abs(n * cfg.dt - cfg.t_end) <= 1e-9 * cfg.t_end:
        return n, cfg.dt
    n = int(math.ceil(cfg.t_end / cfg.dt))
    dt = cfg.t_end / n
    logger.info("t_end is not a multiple of dt; using %d steps of %.6g", n, dt)
    return n, dt


def _strang(c: np.ndarray, half: np.ndarray, dt: float, keep: np.ndarray, to_phys: float, to_spec: float) -> np.ndarray:
    c = c * half
    v = to_phys * np.fft.ifft(c)
    v *= np.exp(1j * (v.real ** 2 + v.imag ** 2) * dt)
    c = to_spec * np.fft.fft(v)
    c[~keep] = 0.0
    return c * half


def split_step(u: SpectralField, alpha: float, h: float, retained: np.ndarray) -> SpectralField:
    """One Strang step of signed size h on the retained slots; h < 0 steps backwards."""
    spec = u.spec
    half = np.exp(0.5j * dispersion_symbol(spec.frequencies, alpha) * h)
    c = _strang(np.array(u.coeffs, dtype=np.complex128), half, h, np.asarray(retained, dtype=bool),
                spec.num_points / spec.volume, spec.dx)
    return SpectralField(spec, c, alpha)


def evolve(u0: SpectralField, cfg: EvolutionConfig) -> Trajectory:
    spec = u0.spec
    keep = cfg.retained_modes(spec)
    if np.any(u0.coeffs[~keep] != 0):
        lost = spec.modes[(~keep) & (u0.coeffs != 0)]
        raise LatticeError(
            f"initial datum has modes outside the retained band (e.g. m={int(lost[0])}); "
            "increase num_points or disable dealiasing"
        )

    n_steps, dt = _step_count(cfg)
    save_at = set(np.unique(np.rint(np.linspace(0, n_steps, cfg.snapshots)).astype(int)).tolist())

    omega = dispersion_symbol(spec.frequencies, cfg.alpha)
    half = np.exp(0.5j * omega * dt)
    to_phys = spec.num_points / spec.volume
    to_spec = spec.dx

    logger.debug(
        "evolve: P=%d lambda=%g steps=%d dt=%.3g stiffness=%.3g retained=%d",
        spec.num_points, spec.lam, n_steps, dt, cfg.stiffness(spec), int(keep.sum()),
    )

    times = [0.0]
    snaps = [SpectralField(spec, u0.coeffs, cfg.alpha)]
    c = np.array(u0.coeffs, dtype=np.complex128)
    for step in range(1, n_steps + 1):
        c = _strang(c, half, dt, keep, to_phys, to_spec)
        if not np.all(np.isfinite(c)):
            raise NumericalAbort(f"non-finite coefficients at step {step}", step=step)
        if step in save_at:
            times.append(step * dt)
            snaps.append(SpectralField(spec, c, cfg.alpha))

    masses = np.array([mass(f) for f in snaps])
    energies = np.array([energy(f, cfg.alpha) for f in snaps])
    hs = {s: np.array([sobolev_norm(f, s) for f in snaps]) for s in cfg.hs_orders}
    diagnostics = {
        "n_steps": float(n_steps),
        "dt": dt,
        "stiffness": cfg.stiffness(spec),
        "mass_drift": float(np.max(np.abs(masses - masses[0])) / max(masses[0], 1e-300)),
        "energy_drift": float(np.max(np.abs(energies - energies[0])) / max(abs(energies[0]), 1e-300)),
    }
    return Trajectory(
        times=np.array(times),
        snapshots=tuple(snaps),
        mass=masses,
        energy=energies,
        hs_norms=hs,
        diagnostics=diagnostics,
        retained=keep,
    )
