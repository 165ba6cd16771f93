from fnls.illposed.data import IllposedDatum, block_length, build_illposed_data, power_of_two_grid
from fnls.illposed.galilean import (
    DominanceReport,
    GalileanReport,
    convolution_dominance_check,
    galilean_error,
    random_dominance_instances,
    random_dominance_pair,
)
from fnls.illposed.picard import (
    PICARD_COLUMNS,
    picard_growth_experiment,
    picard_norm,
    picard_time_linearity,
    predicted_exponent,
)
