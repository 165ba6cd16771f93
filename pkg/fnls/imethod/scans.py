"""Brute-force scans over the integer lattice and N-scaling of the energy gap."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from tqdm import tqdm

from fnls.imethod.energies import energy_gap_ratio, m4_values
from fnls.imethod.lattice import DEFAULT_BUDGET
from fnls.imethod.multipliers import ModifiedEnergyParams, m
from fnls.spectral.torus import SpectralField, TorusSpec
from fnls.utils.errors import ConfigError
from fnls.utils.fitting import fit_loglog_slope

logger = logging.getLogger(__name__)

SCAN_BUDGET = 2e8
VERIFY_FRACTION = 0.01


@dataclass
class M4ScanReport:
    radius: int
    mode: str
    tuples: int
    sup_ratio: float
    argmax: tuple
    resonant_tuples: int
    verify_samples: int = 0
    verify_max_rel_diff: float = 0.0
    g1_variant: str = ""
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "radius": self.radius,
            "mode": self.mode,
            "tuples": self.tuples,
            "sup_ratio": self.sup_ratio,
            "argmax": list(self.argmax),
            "resonant_tuples": self.resonant_tuples,
            "verify_samples": self.verify_samples,
            "verify_max_rel_diff": self.verify_max_rel_diff,
            "g1_variant": self.g1_variant,
        }


def _third_largest(k1, k2, k3, k4):
    a = np.sort(np.abs(np.stack([k1, k2, k3, k4])), axis=0)
    return a[1]


class _Accumulator:
    def __init__(self, params: ModifiedEnergyParams):
        self.params = params
        self.count = 0
        self.resonant = 0
        self.best = -np.inf
        self.argmax = (0, 0, 0, 0)
        self.verified = 0
        self.max_diff = 0.0

    def add(self, k1, k2, k3, k4):
        if k1.size == 0:
            return
        params = self.params
        vals, flags = m4_values(k1, k2, k3, k4, params, return_flag=True)
        ratio = np.abs(vals) / m(_third_largest(k1, k2, k3, k4), params) ** 2
        self.count += k1.size
        self.resonant += int(np.count_nonzero(flags))
        i = int(np.argmax(ratio))
        if ratio[i] > self.best:
            self.best = float(ratio[i])
            self.argmax = (int(k1[i]), int(k2[i]), int(k3[i]), int(k4[i]))
        self._verify(k1, k2, k3, k4, vals, flags)

    def _verify(self, k1, k2, k3, k4, vals, flags):
        # re-evaluate the worst cancellations in extended precision
        params = self.params
        off = ~flags
        if not np.any(off):
            return
        sym = [np.abs(k.astype(np.float64)) ** (2.0 * params.alpha) for k in (k1, k2, k3, k4)]
        den = np.abs(sym[0] - sym[1] + sym[2] - sym[3]) / (np.maximum.reduce(sym) + 1.0)
        cand = np.flatnonzero(off)
        take = max(1, int(VERIFY_FRACTION * cand.size))
        worst = cand[np.argpartition(den[cand], take - 1)[:take]] if take < cand.size else cand
        ext = m4_values(*(k[worst].astype(np.longdouble) for k in (k1, k2, k3, k4)), params)
        ref = np.abs(ext) + np.finfo(np.float64).tiny
        diff = np.max(np.abs(vals[worst].astype(np.longdouble) - ext) / ref)
        self.verified += worst.size
        self.max_diff = max(self.max_diff, float(diff))


def m4_bound_scan(
    params: ModifiedEnergyParams,
    radius: int,
    budget: float = SCAN_BUDGET,
    rng: np.random.Generator = None,
    progress: bool = False,
) -> M4ScanReport:
    """
    Supremum of |M_4(k)| / m(k_3^*)^2 over zero-sum integer tuples with |k_j| <= radius.

    Exhaustive when (2 radius + 1)^3 fits the budget; otherwise `budget` uniform
    samples plus every tuple on the near-resonant families k1 + k2 in {-1, 0, 1}
    and k2 + k3 in {-1, 0, 1}.
    """
    radius = int(radius)
    if radius < 1:
        raise ConfigError(f"radius must be >= 1, got {radius}")
    acc = _Accumulator(params)
    line = np.arange(-radius, radius + 1, dtype=np.int64)
    exhaustive = float(line.size) ** 3 <= budget
    if exhaustive:
        b, c = (g.ravel() for g in np.meshgrid(line, line, indexing="ij"))
        for k1 in tqdm(line, desc="M4 scan", disable=not progress):
            d = -(k1 + b + c)
            keep = np.abs(d) <= radius
            acc.add(np.full(int(keep.sum()), k1), b[keep], c[keep], d[keep])
        mode = "exhaustive"
    else:
        rng = rng if rng is not None else np.random.default_rng(0)
        a, c = (g.ravel() for g in np.meshgrid(line, line, indexing="ij"))
        for delta in tqdm((-1, 0, 1), desc="M4 near-resonant", disable=not progress):
            # k1 + k2 = delta with (k1, k3) free
            k2 = delta - a
            d = -(a + k2 + c)
            keep = (np.abs(k2) <= radius) & (np.abs(d) <= radius)
            acc.add(a[keep], k2[keep], c[keep], d[keep])
            # k2 + k3 = delta with (k1, k2) free
            k3 = delta - c
            d = -(a + c + k3)
            keep = (np.abs(k3) <= radius) & (np.abs(d) <= radius)
            acc.add(a[keep], c[keep], k3[keep], d[keep])
        remaining = int(budget)
        chunk = 1 << 20
        with tqdm(total=remaining, desc="M4 sampled", disable=not progress) as bar:
            while remaining > 0:
                size = min(chunk, remaining)
                k = rng.integers(-radius, radius + 1, size=(3, size))
                d = -(k[0] + k[1] + k[2])
                keep = np.abs(d) <= radius
                acc.add(k[0][keep], k[1][keep], k[2][keep], d[keep])
                remaining -= size
                bar.update(size)
        mode = "sampled"
    logger.info(
        "M4 scan radius=%d (%s): %d tuples, sup ratio %.6g at %s",
        radius, mode, acc.count, acc.best, acc.argmax,
    )
    return M4ScanReport(
        radius=radius,
        mode=mode,
        tuples=acc.count,
        sup_ratio=acc.best,
        argmax=acc.argmax,
        resonant_tuples=acc.resonant,
        verify_samples=acc.verified,
        verify_max_rel_diff=acc.max_diff,
        g1_variant=params.g1_variant,
    )


def m4_table(params: ModifiedEnergyParams, radius: int) -> pd.DataFrame:
    """Every zero-sum quadruple with |k_j| <= radius, for inspection."""
    line = np.arange(-radius, radius + 1, dtype=np.int64)
    a, b, c = (g.ravel() for g in np.meshgrid(line, line, line, indexing="ij"))
    d = -(a + b + c)
    keep = np.abs(d) <= radius
    a, b, c, d = a[keep], b[keep], c[keep], d[keep]
    vals, flags = m4_values(a, b, c, d, params, return_flag=True)
    return pd.DataFrame(
        {"k1": a, "k2": b, "k3": c, "k4": d, "M4": vals, "resonant_flag": flags.astype(int)}
    )


def high_frequency_datum(N: float, rng: np.random.Generator, low_modes: int = 2) -> SpectralField:
    """
    Unit-modulus random phases on |m| <= low_modes and on 2N <= |m| <= 4N (lambda = 1),
    on the smallest power-of-two grid that keeps cubic products resolvable.
    """
    top = int(4 * N)
    size = 8
    while size // 2 - 1 < 2 * top:
        size *= 2
    spec = TorusSpec(1.0, size)
    modes = spec.modes
    am = np.abs(modes)
    active = (am <= low_modes) | ((am >= 2 * N) & (am <= 4 * N))
    coeffs = np.zeros(size, dtype=np.complex128)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=int(active.sum()))
    coeffs[active] = spec.volume * np.exp(1j * phases)
    return SpectralField(spec, coeffs)


def energy_gap_scaling(
    base: ModifiedEnergyParams,
    Ns,
    rng: np.random.Generator,
    trials: int = 4,
    low_modes: int = 2,
    budget: float = DEFAULT_BUDGET,
    progress: bool = False,
) -> dict:
    """Max over trials of |E^2 - E^1| / ||I u||_{H^alpha}^4 per N, with the fitted log-log slope."""
    rows = []
    for N in tqdm(list(Ns), desc="energy gap", disable=not progress):
        params = base.with_N(N)
        ratios = [
            energy_gap_ratio(high_frequency_datum(N, rng, low_modes), params, budget)
            for _ in range(int(trials))
        ]
        rows.append({"N": float(N), "max_ratio": float(np.max(ratios)), "mean_ratio": float(np.mean(ratios))})
    frame = pd.DataFrame(rows)
    fit = fit_loglog_slope(frame["N"], frame["max_ratio"])
    return {"table": frame, "fit": fit}
