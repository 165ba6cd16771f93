"""Resonance function and brute-force verifiers for the lattice counting and convexity bounds."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from tqdm import tqdm

from fnls.spectral.operators import dispersion_symbol
from fnls.utils.errors import ConfigError

logger = logging.getLogger(__name__)


def resonance_psi(k, k1, k2, alpha: float):
    """psi(k, k1, k2) = |k1 - k|^{2a} + |k1|^{2a} - |k2 - k|^{2a} - |k2|^{2a}."""
    k, k1, k2 = (np.asarray(v, dtype=float) for v in (k, k1, k2))
    out = (
        dispersion_symbol(k1 - k, alpha)
        + dispersion_symbol(k1, alpha)
        - dispersion_symbol(k2 - k, alpha)
        - dispersion_symbol(k2, alpha)
    )
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class ConvexityReport:
    radius: int
    alpha: float
    tuples: int
    min_ratio: float
    max_ratio: float
    argmin: tuple

    def to_dict(self) -> dict:
        return {
            "radius": self.radius,
            "alpha": self.alpha,
            "tuples": self.tuples,
            "min_ratio": self.min_ratio,
            "max_ratio": self.max_ratio,
            "argmin": list(self.argmin),
        }


def convexity_gap_check(radius: int, alpha: float, progress: bool = False) -> ConvexityReport:
    """
    min over integer (k1, k2, k3), |k_j| <= radius, (k1 + k2)(k2 + k3) != 0, of

        | |k1|^{2a} - |k2|^{2a} + |k3|^{2a} - |k1+k2+k3|^{2a} | (|k1|+|k2|+|k3|)^{2-2a}
        / ( |k1 + k2| |k2 + k3| ).
    """
    radius = int(radius)
    if radius < 1:
        raise ConfigError(f"radius must be >= 1, got {radius}")
    line = np.arange(-radius, radius + 1, dtype=np.int64)
    b, c = (g.ravel() for g in np.meshgrid(line, line, indexing="ij"))
    sym_b = dispersion_symbol(b, alpha)
    sym_c = dispersion_symbol(c, alpha)
    best, worst, argmin, count = np.inf, -np.inf, (0, 0, 0), 0
    for a in tqdm(line, desc="convexity scan", disable=not progress):
        s12 = a + b
        s23 = b + c
        ok = (s12 != 0) & (s23 != 0)
        if not np.any(ok):
            continue
        lhs = np.abs(
            dispersion_symbol(a, alpha) - sym_b[ok] + sym_c[ok] - dispersion_symbol(a + b[ok] + c[ok], alpha)
        )
        total = (abs(int(a)) + np.abs(b[ok]) + np.abs(c[ok])).astype(float)
        ratio = lhs * total ** (2.0 - 2.0 * alpha) / (np.abs(s12[ok]) * np.abs(s23[ok])).astype(float)
        count += ratio.size
        i = int(np.argmin(ratio))
        if ratio[i] < best:
            best = float(ratio[i])
            argmin = (int(a), int(b[ok][i]), int(c[ok][i]))
        worst = max(worst, float(np.max(ratio)))
    logger.info("convexity scan radius=%d alpha=%g: min ratio %.6g at %s", radius, alpha, best, argmin)
    return ConvexityReport(radius, float(alpha), count, best, worst, argmin)


def counting_oracle(k1: float, bound: float, lam: float = 1.0) -> int:
    """#{k2 in Z/lam : |k2 - k1| <= bound}, by enumeration."""
    if bound < 0:
        raise ConfigError(f"bound must be >= 0, got {bound}")
    lo = math.ceil((k1 - bound) * lam - 1e-9)
    hi = math.floor((k1 + bound) * lam + 1e-9)
    cand = np.arange(lo, hi + 1) / lam
    return int(np.count_nonzero(np.abs(cand - k1) <= bound + 1e-12))
