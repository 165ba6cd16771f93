from dataclasses import dataclass
from typing import Callable, Dict

from fnls.experiments import runners
from fnls.experiments.config import Param


@dataclass(frozen=True)
class ExperimentKind:
    name: str
    description: str
    schema: Dict[str, Param]
    runner: Callable
    # raises on parameter combinations the runner would reject, without computing
    check: Callable[[dict], None]


_KINDS = (
    ExperimentKind("evolve", "Strang-split evolution with mass/energy drift", runners.EVOLVE_SCHEMA,
                   runners.run_evolve, runners.check_evolve),
    ExperimentKind("energy_track", "E1/E2 almost-conservation along an evolution", runners.ENERGY_TRACK_SCHEMA,
                   runners.run_energy_track, runners.check_energy_track),
    ExperimentKind("m4_scan", "Supremum of |M4| / m(k3*)^2 over zero-sum quadruples", runners.M4_SCAN_SCHEMA,
                   runners.run_m4_scan, runners.check_m4_scan),
    ExperimentKind("convexity_scan", "Lower bound of the resonance function on the lattice",
                   runners.CONVEXITY_SCHEMA, runners.run_convexity_scan, runners.check_convexity_scan),
    ExperimentKind("strichartz_l4", "Empirical L4 Strichartz quotients per band", runners.STRICHARTZ_L4_SCHEMA,
                   runners.run_strichartz_l4, runners.check_strichartz_l4),
    ExperimentKind("strichartz_bilinear", "Empirical bilinear Strichartz quotients for separated bands",
                   runners.STRICHARTZ_BILINEAR_SCHEMA, runners.run_strichartz_bilinear,
                   runners.check_strichartz_bilinear),
    ExperimentKind("strichartz_l6", "Empirical L6 Strichartz quotients per band", runners.STRICHARTZ_L6_SCHEMA,
                   runners.run_strichartz_l6, runners.check_strichartz_l6),
    ExperimentKind("sharp_example", "Block exponential sums saturating the bilinear estimate",
                   runners.SHARP_SCHEMA, runners.run_sharp_example, runners.check_sharp_example),
    ExperimentKind("picard_growth", "H^s growth of the first Picard iterate", runners.PICARD_SCHEMA,
                   runners.run_picard_growth, runners.check_picard_growth),
    ExperimentKind("galilean", "Approximate Galilean identity and its error bound", runners.GALILEAN_SCHEMA,
                   runners.run_galilean, runners.check_galilean),
    ExperimentKind("dominance", "Convolution dominance on random instances", runners.DOMINANCE_SCHEMA,
                   runners.run_dominance, runners.check_dominance),
    ExperimentKind("lambda_selection", "Rescaling parameter and E1 of the rescaled datum",
                   runners.LAMBDA_SCHEMA, runners.run_lambda_selection, runners.check_lambda_selection),
    ExperimentKind("rescaling_transfer", "Strichartz constants on T_lambda against T", runners.RESCALING_SCHEMA,
                   runners.run_rescaling_transfer, runners.check_rescaling_transfer),
    ExperimentKind("energy_gap", "Scaling of |E2 - E1| in N for high-frequency data", runners.ENERGY_GAP_SCHEMA,
                   runners.run_energy_gap, runners.check_energy_gap),
)

KINDS: Dict[str, ExperimentKind] = {k.name: k for k in _KINDS}
SCHEMAS: Dict[str, Dict[str, Param]] = {k.name: k.schema for k in _KINDS}
