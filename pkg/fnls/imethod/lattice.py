"""
Zero-sum frequency tuples and the n-linear functionals

    Lambda_n(M; u) = (2 pi lam)^{-(n-1)} sum_{k_1 + ... + k_n = 0} M(k) prod_j g_j(k_j),

with g_j = u_hat for odd j and g_j(k) = conj(u_hat(-k)) for even j.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from fnls.spectral.operators import resample
from fnls.spectral.norms import lp_norm
from fnls.spectral.torus import SpectralField
from fnls.utils.errors import BudgetExceededError, LatticeError
from fnls.utils.parallel import ordered_map

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 1e9
# largest inner block evaluated in one vectorized call
INNER_CHUNK = 1 << 20


@dataclass(frozen=True)
class FrequencyTuple:
    """(k_1, ..., k_n) in Gamma_n, stored as integer lattice indices m_j = lam * k_j."""

    indices: Tuple[int, ...]
    lam: float = 1.0

    def __post_init__(self):
        idx = tuple(int(m) for m in self.indices)
        if len(idx) not in (2, 4, 6):
            raise LatticeError(f"tuple order must be 2, 4 or 6, got {len(idx)}")
        if sum(idx) != 0:
            raise LatticeError(f"frequencies {idx} do not sum to zero")
        object.__setattr__(self, "indices", idx)

    @classmethod
    def from_frequencies(cls, ks, lam: float = 1.0) -> "FrequencyTuple":
        idx = []
        for k in ks:
            m = round(float(k) * lam)
            if abs(float(k) * lam - m) > 1e-9 * max(1.0, abs(float(k) * lam)):
                raise LatticeError(f"frequency {k} is not on the lattice Z/{lam}")
            idx.append(int(m))
        return cls(tuple(idx), lam)

    @property
    def order(self) -> int:
        return len(self.indices)

    @property
    def ks(self) -> Tuple[float, ...]:
        return tuple(m / self.lam for m in self.indices)

    def k_star(self, j: int) -> float:
        """j-th largest |k| (1-based), the k_j^* ordering."""
        return sorted((abs(k) for k in self.ks), reverse=True)[j - 1]


class ProductMultiplier:
    """
    M(k_1, ..., k_n) = prod_j sigma(k_j) for a real, even symbol sigma.

    For such multipliers Lambda_n(M; u) = ||sigma(D) u||_{L^n}^n, which is
    evaluated in physical space instead of on Gamma_n.
    """

    def __init__(self, symbol: Callable[[np.ndarray], np.ndarray], name: str = "product"):
        self.symbol = symbol
        self.name = name

    def __call__(self, *ks):
        out = np.asarray(self.symbol(ks[0]), dtype=float)
        for k in ks[1:]:
            out = out * self.symbol(k)
        return out

    def __repr__(self):
        return f"ProductMultiplier({self.name})"


ONE = ProductMultiplier(lambda k: np.ones_like(np.asarray(k, dtype=float)), name="one")


def lambda_cost(u: SpectralField, n: int) -> float:
    return float(np.count_nonzero(u.coeffs)) ** (n - 1)


def _lambda_physical(multiplier: ProductMultiplier, u: SpectralField, n: int) -> complex:
    w = u.with_coeffs(u.coeffs * multiplier.symbol(u.spec.frequencies))
    support = w.support()
    if support.size == 0:
        return 0j
    reach = n * int(np.max(np.abs(support)))
    size = u.spec.num_points
    while size <= reach + 1:
        size *= 2
    # |w|^n has frequencies up to n * max|m|, so the trapezoid rule on this grid is exact
    return complex(lp_norm(resample(w, size), n) ** n)


def _lambda_direct(multiplier, u: SpectralField, n: int, return_scale: bool = False):
    spec = u.spec
    support = u.support()
    if support.size == 0:
        return (0j, 0.0) if return_scale else 0j
    reach = int(np.max(np.abs(support)))
    R = (n - 1) * reach
    # dense lookups over [-R, R]: odd slots see u_hat, even slots conj(u_hat(-k))
    odd = np.zeros(2 * R + 1, dtype=np.complex128)
    even = np.zeros(2 * R + 1, dtype=np.complex128)
    vals = u.coeffs[support % spec.num_points]
    odd[support + R] = vals
    even[-support + R] = np.conj(vals)
    tables = [odd if j % 2 == 0 else even for j in range(n)]

    free = n - 1
    S = support.size
    inner = 1
    while inner < free and S ** (inner + 1) <= INNER_CHUNK:
        inner += 1
    outer = free - inner
    mesh = [g.ravel() for g in np.meshgrid(*([support] * inner), indexing="ij")]
    inner_sum = np.sum(mesh, axis=0)
    lam = spec.lam

    def block(prefix):
        idx = [np.full(inner_sum.shape, m, dtype=np.int64) for m in prefix] + mesh
        last = -(sum(prefix) + inner_sum)
        idx.append(last)
        weight = np.ones(inner_sum.shape, dtype=np.complex128)
        for j, m_j in enumerate(idx):
            weight = weight * tables[j][m_j + R]
        nz = weight != 0
        if not np.any(nz):
            return 0j, 0.0
        ks = [m_j[nz] / lam for m_j in idx]
        terms = np.asarray(multiplier(*ks)) * weight[nz]
        return complex(np.sum(terms)), float(np.sum(np.abs(terms)))

    prefixes = list(itertools.product(support.tolist(), repeat=outer))
    parts = ordered_map(block, prefixes)
    total = complex(np.sum(np.array([p[0] for p in parts], dtype=np.complex128)))
    scale = float(np.sum([p[1] for p in parts]))
    norm = spec.volume ** (-(n - 1))
    if return_scale:
        return total * norm, scale * norm
    return total * norm


def lambda_n(
    multiplier,
    u: SpectralField,
    n: int,
    budget: float = DEFAULT_BUDGET,
    method: str = "auto",
    return_scale: bool = False,
):
    """
    Evaluate Lambda_n(multiplier; u).

    method="auto" routes ProductMultiplier instances through physical space and
    everything else through the direct lattice sum; method="direct" forces the sum.
    With return_scale=True the direct path also returns the absolute-value sum of
    the terms (same weight), the natural scale for round-off checks.
    """
    if n not in (2, 4, 6):
        raise LatticeError(f"Lambda_n is defined for n in (2, 4, 6), got {n}")
    if method not in ("auto", "direct"):
        raise LatticeError(f"unknown method {method!r}")
    if method == "auto" and isinstance(multiplier, ProductMultiplier) and not return_scale:
        return _lambda_physical(multiplier, u, n)
    cost = lambda_cost(u, n)
    if cost > budget:
        raise BudgetExceededError(
            f"Lambda_{n} over {np.count_nonzero(u.coeffs)} modes needs ~{cost:.3g} "
            f"multiplier evaluations (budget {budget:.3g}); reduce num_points or the active band",
            estimated_cost=cost,
            budget=budget,
        )
    logger.debug("Lambda_%d direct sum: %.3g evaluations", n, cost)
    return _lambda_direct(multiplier, u, n, return_scale=return_scale)
