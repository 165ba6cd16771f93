"""
Config -> validated ExperimentConfig -> runner -> artifacts -> report.json.
"""
import os
import time
import logging

import numpy as np

from fnls.experiments.config import ExperimentConfig, load_config
from fnls.experiments.registry import KINDS, SCHEMAS
from fnls.experiments.report import ArtifactWriter, ExperimentReport, content_hash
from fnls.utils.errors import ReportIOError

logger = logging.getLogger(__name__)


def check_parameters(cfg: ExperimentConfig):
    """Per-kind semantic checks on a schema-valid config."""
    KINDS[cfg.kind].check(cfg.parameters)


def validate_experiment(path: str) -> ExperimentConfig:
    """Parse and validate without computing or touching the output directory."""
    cfg = load_config(path, SCHEMAS)
    check_parameters(cfg)
    return cfg


def _prepare_output(directory: str):
    try:
        os.makedirs(directory, exist_ok=True)
    except OSError as e:
        raise ReportIOError(f"Cannot create output directory {directory}: {e}") from e


def execute(cfg: ExperimentConfig, output_dir: str = None, progress: bool = False) -> ExperimentReport:
    directory = output_dir or cfg.output_dir
    kind = KINDS[cfg.kind]
    echo = cfg.echo()
    digest = content_hash({"kind": cfg.kind, "seed": cfg.seed, "parameters": cfg.parameters})

    check_parameters(cfg)
    _prepare_output(directory)
    writer = ArtifactWriter(directory)
    rng = np.random.default_rng(cfg.seed)
    logger.info("Running %s (seed=%d, hash=%s) into %s", cfg.kind, cfg.seed, digest[:12], directory)

    start = time.perf_counter()
    results = kind.runner(cfg.parameters, rng, writer, progress)
    elapsed = time.perf_counter() - start

    report = ExperimentReport(
        kind=cfg.kind,
        config=echo,
        seed=cfg.seed,
        content_hash=digest,
        results=results,
        manifest=list(writer.manifest),
        wall_seconds=elapsed,
        g1_variant=cfg.parameters.get("g1_variant"),
    )
    report.write(directory)
    return report


def run_experiment(path: str, output_dir: str = None, progress: bool = False) -> ExperimentReport:
    return execute(validate_experiment(path), output_dir, progress)
