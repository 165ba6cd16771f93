"""Declarative experiment runner: YAML config in, CSV artifacts and report.json out."""
from fnls.experiments.config import ExperimentConfig, Param, load_config, validate_config
from fnls.experiments.lambda_selection import choose_lambda
from fnls.experiments.pipeline import execute, run_experiment, validate_experiment
from fnls.experiments.registry import KINDS, SCHEMAS
from fnls.experiments.report import ExperimentReport, content_hash

__all__ = [
    "ExperimentConfig",
    "Param",
    "load_config",
    "validate_config",
    "choose_lambda",
    "execute",
    "run_experiment",
    "validate_experiment",
    "KINDS",
    "SCHEMAS",
    "ExperimentReport",
    "content_hash",
]
