"""Time integration of the defocusing fractional cubic NLS and its conserved functionals."""
from fnls.dynamics.functionals import mass, energy, scaling_exponents
from fnls.dynamics.integrator import EvolutionConfig, Trajectory, evolve, split_step
from fnls.dynamics.duhamel import duhamel_nonlinear

__all__ = [
    "mass",
    "energy",
    "scaling_exponents",
    "EvolutionConfig",
    "Trajectory",
    "evolve",
    "split_step",
    "duhamel_nonlinear",
]
