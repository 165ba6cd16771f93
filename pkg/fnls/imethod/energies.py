"""
The quartic multiplier M_4, the sextic M_6 and the modified energies

    E^1(u) = E(I u),
    E^2(u) = 1/2 Lambda_2(m_1 |k_1|^alpha m_2 |k_2|^alpha; u) + 1/4 Lambda_4(M_4; u).
"""
from __future__ import annotations

import logging
from typing import Callable, Optional

import numpy as np

from fnls.dynamics.functionals import energy
from fnls.imethod.lattice import DEFAULT_BUDGET, FrequencyTuple, ProductMultiplier, lambda_n
from fnls.imethod.multipliers import ModifiedEnergyParams, apply_I, m
from fnls.spectral.norms import sobolev_norm
from fnls.spectral.operators import dispersion_symbol
from fnls.spectral.torus import SpectralField
from fnls.utils.errors import LatticeError, NumericalAbort

logger = logging.getLogger(__name__)

RESONANCE_TOL = 1e-9
IMAG_TOL = 1e-10


def m4_values(k1, k2, k3, k4, params: ModifiedEnergyParams, resonance_tol: float = RESONANCE_TOL,
              return_flag: bool = False):
    """Vectorized M_4 on zero-sum quadruples (no zero-sum check)."""
    ks = [np.asarray(k) for k in (k1, k2, k3, k4)]
    sym = [dispersion_symbol(k, params.alpha) for k in ks]
    mm = [m(k, params) for k in ks]
    num = sym[0] * mm[0] ** 2 - sym[1] * mm[1] ** 2 + sym[2] * mm[2] ** 2 - sym[3] * mm[3] ** 2
    den = sym[0] - sym[1] + sym[2] - sym[3]
    scale = np.maximum(np.maximum(sym[0], sym[1]), np.maximum(sym[2], sym[3])) + 1.0
    resonant = np.abs(den) < resonance_tol * scale
    safe = np.where(resonant, 1.0, den)
    out = np.where(resonant, mm[0] * mm[1] * mm[2] * mm[3], num / safe)
    if return_flag:
        return out, resonant
    return out


def m4(k: FrequencyTuple, params: ModifiedEnergyParams) -> float:
    if k.order != 4:
        raise LatticeError(f"M_4 needs a 4-tuple, got order {k.order}")
    return float(m4_values(*k.ks, params))


def m6_values(k1, k2, k3, k4, k5, k6, params: ModifiedEnergyParams,
              retained: Optional[Callable[[np.ndarray], np.ndarray]] = None):
    """
    M_4(k1+k2+k3, k4, k5, k6) - M_4(k1, k2+k3+k4, k5, k6)
      + M_4(k1, k2, k3+k4+k5, k6) - M_4(k1, k2, k3, k4+k5+k6).

    With retained given, each term is kept only when its merged frequency lies
    in the retained band (Galerkin-truncated flow).
    """
    merged = [k1 + k2 + k3, k2 + k3 + k4, k3 + k4 + k5, k4 + k5 + k6]
    terms = [
        m4_values(merged[0], k4, k5, k6, params),
        m4_values(k1, merged[1], k5, k6, params),
        m4_values(k1, k2, merged[2], k6, params),
        m4_values(k1, k2, k3, merged[3], params),
    ]
    if retained is not None:
        terms = [t * retained(q) for t, q in zip(terms, merged)]
    return terms[0] - terms[1] + terms[2] - terms[3]


def m6(k: FrequencyTuple, params: ModifiedEnergyParams) -> float:
    if k.order != 6:
        raise LatticeError(f"M_6 needs a 6-tuple, got order {k.order}")
    return float(m6_values(*k.ks, params))


def kinetic_multiplier(params: ModifiedEnergyParams) -> ProductMultiplier:
    """m(k) |k|^alpha as a product symbol."""
    return ProductMultiplier(
        lambda k: m(k, params) * dispersion_symbol(k, params.alpha / 2.0), name="m|k|^alpha"
    )


def smoothing_multiplier(params: ModifiedEnergyParams) -> ProductMultiplier:
    return ProductMultiplier(lambda k: m(k, params), name="m")


def _real_part(value: complex, scale: float, what: str) -> float:
    tol = IMAG_TOL * max(scale, abs(value), 1e-300)
    if abs(value.imag) > tol:
        raise NumericalAbort(
            f"{what} has imaginary residue {value.imag:.3e} above tolerance {tol:.3e}"
        )
    return float(value.real)


def e1(u: SpectralField, params: ModifiedEnergyParams) -> float:
    """E^1(u) = E(I u), physical-space path."""
    return energy(apply_I(u, params), params.alpha)


def e1_dual(u: SpectralField, params: ModifiedEnergyParams, budget: float = DEFAULT_BUDGET) -> float:
    """E^1 through direct lattice sums, independent of the physical path."""
    quad, qs = lambda_n(kinetic_multiplier(params), u, 2, budget, method="direct", return_scale=True)
    quart, fs = lambda_n(smoothing_multiplier(params), u, 4, budget, method="direct", return_scale=True)
    return 0.5 * _real_part(quad, qs, "Lambda_2") + 0.25 * _real_part(quart, fs, "Lambda_4")


def e2(u: SpectralField, params: ModifiedEnergyParams, budget: float = DEFAULT_BUDGET) -> float:
    quad = lambda_n(kinetic_multiplier(params), u, 2, budget).real
    multiplier = lambda *ks: m4_values(*ks, params)
    quart, scale = lambda_n(multiplier, u, 4, budget, method="direct", return_scale=True)
    return 0.5 * quad + 0.25 * _real_part(quart, scale, "Lambda_4(M_4)")


def retained_band(u: SpectralField, retained: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
    """Turn a boolean slot mask into a membership test on frequencies."""
    spec = u.spec
    allowed = set(spec.modes[np.asarray(retained, dtype=bool)].tolist())
    reach = max(abs(a) for a in allowed) if allowed else 0
    table = np.zeros(2 * reach + 1, dtype=float)
    for a in allowed:
        table[a + reach] = 1.0

    def member(k):
        idx = np.rint(np.asarray(k) * spec.lam).astype(np.int64)
        inside = np.abs(idx) <= reach
        out = np.zeros(idx.shape, dtype=float)
        out[inside] = table[idx[inside] + reach]
        return out

    return member


def energy_derivative(
    u: SpectralField,
    params: ModifiedEnergyParams,
    retained: Optional[np.ndarray] = None,
    budget: float = DEFAULT_BUDGET,
) -> float:
    """
    d/dt E^2(u(t)) along the flow, from the sextic functional:
        d/dt E^2 = (i/4) Lambda_6(M_6; u).
    The 1/4 is the weight of the quartic term of E^2. Pass the integrator's
    retained-slot mask to get the identity of the truncated flow.
    """
    member = retained_band(u, retained) if retained is not None else None
    multiplier = lambda *ks: m6_values(*ks, params, retained=member)
    value, scale = lambda_n(multiplier, u, 6, budget, method="direct", return_scale=True)
    return _real_part(0.25j * value, 0.25 * scale, "(i/4) Lambda_6(M_6)")


def energy_gap_ratio(u: SpectralField, params: ModifiedEnergyParams, budget: float = DEFAULT_BUDGET) -> float:
    """|E^2 - E^1| / ||I u||_{H^alpha}^4."""
    denom = sobolev_norm(apply_I(u, params), params.alpha) ** 4
    if denom == 0:
        return 0.0
    return abs(e2(u, params, budget) - e1(u, params)) / denom
