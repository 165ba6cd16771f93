"""I-operator, Lambda_n functionals and the modified energies E^1, E^2."""
from fnls.imethod.multipliers import (
    G1_VARIANTS,
    ModifiedEnergyParams,
    apply_I,
    g1,
    m,
    sandwich_bounds,
)
from fnls.imethod.lattice import FrequencyTuple, ProductMultiplier, lambda_n
from fnls.imethod.energies import (
    e1,
    e1_dual,
    e2,
    energy_derivative,
    energy_gap_ratio,
    m4,
    m4_values,
    m6,
    m6_values,
)

__all__ = [
    "G1_VARIANTS",
    "ModifiedEnergyParams",
    "apply_I",
    "g1",
    "m",
    "sandwich_bounds",
    "FrequencyTuple",
    "ProductMultiplier",
    "lambda_n",
    "e1",
    "e1_dual",
    "e2",
    "energy_derivative",
    "energy_gap_ratio",
    "m4",
    "m4_values",
    "m6",
    "m6_values",
]
