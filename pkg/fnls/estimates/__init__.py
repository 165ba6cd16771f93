"""Strichartz-constant estimators, sharp examples and lattice verifiers."""
from fnls.estimates.resonance import convexity_gap_check, counting_oracle, resonance_psi
from fnls.estimates.strichartz import (
    StrichartzProbe,
    QuotientReport,
    band_scaling,
    bilinear_quotient,
    l6_quotient,
    rescaling_transfer,
    spacetime_integral,
    strichartz_l4_quotient,
    trial_data,
)
from fnls.estimates.examples import (
    concentration_ratio,
    concentration_spot_check,
    sharp_bilinear_example,
    sharp_block_lengths,
)

__all__ = [
    "convexity_gap_check",
    "counting_oracle",
    "resonance_psi",
    "StrichartzProbe",
    "QuotientReport",
    "band_scaling",
    "bilinear_quotient",
    "l6_quotient",
    "rescaling_transfer",
    "spacetime_integral",
    "strichartz_l4_quotient",
    "trial_data",
    "concentration_ratio",
    "concentration_spot_check",
    "sharp_bilinear_example",
    "sharp_block_lengths",
]
