"""
Empirical Strichartz constants on T_lambda.

Space-time integrals are trapezoid rules in time (samples chosen so the
fastest phase advances less than pi/4 per step) and exact trigonometric
quadrature in space (fields are resampled onto a grid that resolves the
integrand).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from scipy.integrate import trapezoid
from tqdm import tqdm

from fnls.spectral.norms import lp_norm
from fnls.spectral.operators import dispersion_symbol, dyadic_band, resample
from fnls.spectral.torus import SpectralField, TorusSpec
from fnls.utils.errors import ConfigError, LatticeError, PreconditionError
from fnls.utils.fitting import fit_loglog_slope
from fnls.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

DATA_KINDS = ("random_unimodular_phases", "block_exponential_sum", "single_mode")
PHASE_STEP = np.pi / 4.0
L6_EPSILON = 0.05
TIME_CHUNK = 256


@dataclass(frozen=True)
class StrichartzProbe:
    torus: TorusSpec
    N: float
    horizon: float
    alpha: float
    time_samples: Optional[int] = None
    data_kind: str = "random_unimodular_phases"
    N2: Optional[float] = None

    def __post_init__(self):
        if not self.horizon > 0:
            raise ConfigError(f"horizon T must be positive, got {self.horizon}")
        if not (0.5 < self.alpha <= 1.0):
            raise ConfigError(f"alpha must lie in (1/2, 1], got {self.alpha}")
        if self.data_kind not in DATA_KINDS:
            raise ConfigError(f"unknown data kind {self.data_kind!r}; available: {DATA_KINDS}")
        if self.N > self.torus.k_max:
            raise LatticeError(f"band N={self.N} exceeds K_max={self.torus.k_max:g}")

    def to_dict(self) -> dict:
        return {
            "lambda": self.torus.lam,
            "num_points": self.torus.num_points,
            "N": self.N,
            "N2": self.N2,
            "T": self.horizon,
            "alpha": self.alpha,
            "time_samples": self.time_samples,
            "data_kind": self.data_kind,
        }


@dataclass
class QuotientReport:
    kind: str
    probe: dict
    per_trial: list
    max_quotient: float
    numerators: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "probe": self.probe,
            "per_trial": list(self.per_trial),
            "max_quotient": self.max_quotient,
        }


# ---------- data ----------
def band_indices(spec: TorusSpec, N: float) -> np.ndarray:
    keep = dyadic_band(N)(spec.frequencies) & (np.abs(spec.modes) <= spec.max_index)
    return spec.modes[keep]


def trial_data(kind: str, spec: TorusSpec, N: float, rng: np.random.Generator) -> SpectralField:
    """
    One datum phi = P_N phi with unit physical amplitude per mode
    (u_hat = 2 pi lam on the band, times a phase).
    """
    idx = band_indices(spec, N)
    if idx.size == 0:
        raise LatticeError(f"band P_{N:g} contains no lattice point of {spec}")
    coeffs = np.zeros(spec.num_points, dtype=np.complex128)
    if kind == "random_unimodular_phases":
        coeffs[idx % spec.num_points] = spec.volume * np.exp(2j * np.pi * rng.random(idx.size))
    elif kind == "block_exponential_sum":
        coeffs[idx % spec.num_points] = spec.volume
    elif kind == "single_mode":
        top = int(idx[np.argmax(idx)])
        coeffs[top % spec.num_points] = spec.volume
    else:
        raise ConfigError(f"unknown data kind {kind!r}")
    return SpectralField(spec, coeffs)


# ---------- quadrature ----------
def max_frequency(fields: Sequence[SpectralField]) -> float:
    reach = 0.0
    for f in fields:
        support = f.support()
        if support.size:
            reach = max(reach, float(np.max(np.abs(support))) / f.spec.lam)
    return reach


def auto_time_samples(T: float, k_band: float, alpha: float) -> int:
    """Smallest sample count with dt (2 K)^{2 alpha} < pi / 4."""
    rate = (2.0 * k_band) ** (2.0 * alpha)
    return max(3, int(math.floor(T * rate / PHASE_STEP)) + 2)


def check_time_samples(T: float, samples: int, k_band: float, alpha: float):
    if samples < 2:
        raise PreconditionError("time_samples must be >= 2")
    dt = T / (samples - 1)
    advance = dt * (2.0 * k_band) ** (2.0 * alpha)
    if advance >= PHASE_STEP:
        raise PreconditionError(
            f"time_samples={samples} under-resolves the fastest phase: dt*(2K)^(2a)={advance:.3g} >= pi/4; "
            f"need at least {auto_time_samples(T, k_band, alpha)}"
        )


def spacetime_integral(
    fields: Sequence[SpectralField],
    powers: Sequence[int],
    T: float,
    alpha: float,
    time_samples: Optional[int] = None,
) -> float:
    """int_0^T int_{T_lambda} prod_j |S(t) phi_j|^{p_j} dx dt."""
    spec = fields[0].spec
    if any(f.spec != spec for f in fields):
        raise LatticeError("all fields must live on the same torus")
    k_band = max_frequency(fields)
    samples = time_samples or auto_time_samples(T, k_band, alpha)
    check_time_samples(T, samples, k_band, alpha)

    reach = sum(int(p) * int(round(k_band * spec.lam)) for p in powers)
    size = spec.num_points
    while size <= reach + 1:
        size *= 2
    grids = [resample(f, size) for f in fields]
    fine = grids[0].spec
    omega = dispersion_symbol(fine.frequencies, alpha)
    times = np.linspace(0.0, T, samples)
    spatial = np.empty(samples)
    to_phys = fine.num_points / fine.volume
    for start in range(0, samples, TIME_CHUNK):
        t = times[start:start + TIME_CHUNK]
        phase = np.exp(1j * np.outer(t, omega))
        integrand = np.ones((t.size, fine.num_points))
        for g, p in zip(grids, powers):
            values = to_phys * np.fft.ifft(g.coeffs[None, :] * phase, axis=1)
            integrand *= np.abs(values) ** p
        spatial[start:start + t.size] = fine.dx * integrand.sum(axis=1)
    return float(trapezoid(spatial, times))


# ---------- quotients ----------
def l4_normalization(T: float, lam: float, N: float, alpha: float) -> float:
    return T / lam + math.sqrt(T) * N ** (1.0 - alpha)


def bilinear_normalization(T: float, lam: float, N1: float, alpha: float) -> float:
    return T / lam + N1 ** (1.0 - 2.0 * alpha)


def l6_normalization(T: float, lam: float, N: float, alpha: float, eps: float = L6_EPSILON) -> float:
    return lam ** eps * (T / lam ** (2.0 * alpha)) ** (1.0 / 6.0) * N ** ((1.0 - alpha) / 3.0 + eps)


def _trials(probe: StrichartzProbe, trials: int) -> int:
    return int(trials) if probe.data_kind == "random_unimodular_phases" else 1


def _run(kind, probe, data, evaluate):
    values = ordered_map(evaluate, data)
    quotients = [q for q, _ in values]
    return QuotientReport(
        kind=kind,
        probe=probe.to_dict(),
        per_trial=quotients,
        max_quotient=float(np.max(quotients)),
        numerators=[n for _, n in values],
    )


def strichartz_l4_quotient(probe: StrichartzProbe, trials: int = 64, rng: np.random.Generator = None) -> QuotientReport:
    """||S(t) phi||_{L^4}^4 / ((T/lam + T^{1/2} N^{1-alpha}) ||phi||_2^4) over trial data."""
    rng = rng if rng is not None else np.random.default_rng(0)
    lam, T, a = probe.torus.lam, probe.horizon, probe.alpha
    data = [trial_data(probe.data_kind, probe.torus, probe.N, rng) for _ in range(_trials(probe, trials))]
    norm = l4_normalization(T, lam, probe.N, a)

    def evaluate(phi):
        num = spacetime_integral([phi], [4], T, a, probe.time_samples)
        return num / (norm * lp_norm(phi, 2) ** 4), num

    return _run("strichartz_l4", probe, data, evaluate)


def bilinear_value(phi1: SpectralField, phi2: SpectralField, T: float, N1: float, alpha: float,
                   time_samples: Optional[int] = None):
    """(quotient, numerator) for ||S phi1 S phi2||_{L^2}^2 against (T/lam + N1^{1-2a}) ||phi1||^2 ||phi2||^2."""
    lam = phi1.spec.lam
    num = spacetime_integral([phi1, phi2], [2, 2], T, alpha, time_samples)
    den = bilinear_normalization(T, lam, N1, alpha) * lp_norm(phi1, 2) ** 2 * lp_norm(phi2, 2) ** 2
    return num / den, num


def bilinear_quotient(probe: StrichartzProbe, trials: int = 64, rng: np.random.Generator = None) -> QuotientReport:
    if probe.N2 is None:
        raise ConfigError("bilinear probe needs N2")
    if probe.N < 8 * probe.N2:
        raise PreconditionError(f"bilinear estimate needs N1 >= 8 N2, got N1={probe.N}, N2={probe.N2}")
    rng = rng if rng is not None else np.random.default_rng(0)
    count = _trials(probe, trials)
    data = []
    for _ in range(count):
        phi1 = trial_data(probe.data_kind, probe.torus, probe.N, rng)
        phi2 = trial_data(probe.data_kind, probe.torus, probe.N2, rng)
        data.append((phi1, phi2))

    def evaluate(pair):
        return bilinear_value(pair[0], pair[1], probe.horizon, probe.N, probe.alpha, probe.time_samples)

    return _run("strichartz_bilinear", probe, data, evaluate)


def l6_quotient(probe: StrichartzProbe, trials: int = 64, rng: np.random.Generator = None,
                eps: float = L6_EPSILON) -> QuotientReport:
    lam, T, a = probe.torus.lam, probe.horizon, probe.alpha
    if T < lam ** (2.0 * a):
        raise PreconditionError(f"L6 estimate needs T >= lambda^(2 alpha) = {lam ** (2 * a):.6g}, got T={T}")
    rng = rng if rng is not None else np.random.default_rng(0)
    data = [trial_data(probe.data_kind, probe.torus, probe.N, rng) for _ in range(_trials(probe, trials))]
    norm = l6_normalization(T, lam, probe.N, a, eps)

    def evaluate(phi):
        num = spacetime_integral([phi], [6], T, a, probe.time_samples)
        return num ** (1.0 / 6.0) / (norm * lp_norm(phi, 2)), num

    return _run("strichartz_l6", probe, data, evaluate)


QUOTIENTS = {
    "l4": strichartz_l4_quotient,
    "bilinear": bilinear_quotient,
    "l6": l6_quotient,
}


def band_scaling(kind: str, probes: Sequence[StrichartzProbe], trials: int, rng: np.random.Generator,
                 progress: bool = False) -> dict:
    """Max quotient per band and the fitted log-log slope against N (boundedness: slope <= 0.1)."""
    fn = QUOTIENTS[kind]
    rows, reports = [], []
    for probe in tqdm(probes, desc=f"{kind} bands", disable=not progress):
        report = fn(probe, trials, rng)
        reports.append(report)
        rows.append({"N": probe.N, "N2": probe.N2, "max_quotient": report.max_quotient})
    frame = pd.DataFrame(rows)
    fit = fit_loglog_slope(frame["N"], frame["max_quotient"]) if len(rows) >= 2 else None
    return {"table": frame, "fit": fit, "reports": reports}


# ---------- rescaling transfer ----------
def rescaling_transfer(
    alpha: float,
    lam: float,
    T: float,
    N: float,
    m_power: int = 2,
    num_points: int = 256,
    rng: np.random.Generator = None,
    data_kind: str = "random_unimodular_phases",
) -> dict:
    """
    Compare the space-time ratio int |S phi|^{2m} / ||phi||^{2m} on T_lam against
    lam^{1 - m + 2 alpha} times the same ratio on T for the dilated datum
    f(x) = phi(lam x) at horizon lam^{-2 alpha} T and band lam N.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    spec_lam = TorusSpec(float(lam), int(num_points))
    phi = trial_data(data_kind, spec_lam, N, rng)
    dilated = SpectralField(TorusSpec(1.0, int(num_points)), phi.coeffs / lam)
    samples = auto_time_samples(T, max_frequency([phi]), alpha)
    p = 2 * int(m_power)
    lhs = spacetime_integral([phi], [p], T, alpha, samples) / lp_norm(phi, 2) ** p
    rhs_unit = spacetime_integral([dilated], [p], T * lam ** (-2.0 * alpha), alpha, samples) / lp_norm(dilated, 2) ** p
    predicted = lam ** (1.0 - m_power + 2.0 * alpha) * rhs_unit
    rel = abs(lhs - predicted) / abs(predicted)
    logger.info("rescaling transfer lam=%g m=%d: relative mismatch %.3e", lam, m_power, rel)
    return {
        "lambda": float(lam),
        "m": int(m_power),
        "T": float(T),
        "N": float(N),
        "ratio_lambda": lhs,
        "ratio_unit": rhs_unit,
        "predicted": predicted,
        "relative_error": rel,
    }
