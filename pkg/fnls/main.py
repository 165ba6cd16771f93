#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
fnls-lab CLI entrypoint

    fnls run <config.yaml | kind>      run one experiment, write CSVs and report.json
    fnls validate <config.yaml | kind> parse and validate only
    fnls list-kinds                    table of experiment kinds
"""

import os
import sys
import logging
import argparse

from rich.console import Console
from rich.table import Table
from rich import box

from fnls import get_version
from fnls.experiments.config import load_global_config
from fnls.experiments.pipeline import execute, validate_experiment
from fnls.experiments.registry import KINDS
from fnls.utils.errors import FnlsError
from fnls.utils.interrupts import InterruptController, InterruptException

console = Console(stderr=True)

EXIT_OK = 0
EXIT_INTERRUPTED = 130


def resolve_config_path(target: str, global_cfg: dict) -> str:
    """A file path is used as-is; a bare kind name maps through the global config."""
    if os.path.isfile(target):
        return target
    if target in KINDS:
        return global_cfg.get("experiments", {}).get(target, f"config_{target}.yaml")
    return target


def _table(title: str, rows, columns=("Key", "Value")) -> Table:
    table = Table(box=box.SIMPLE, title=title, title_style="bold bright_white", header_style="bright_white")
    for col in columns:
        table.add_column(col, style="white")
    for row in rows:
        table.add_row(*[str(v) for v in row])
    return table


def _scalar_rows(results: dict):
    for key, value in results.items():
        if isinstance(value, (int, float, str, bool)) or value is None:
            yield key, value


def cmd_list_kinds(args, global_cfg) -> int:
    rows = [(name, kind.description, resolve_config_path(name, global_cfg)) for name, kind in KINDS.items()]
    console.print(_table("Experiment kinds", rows, ("Kind", "Description", "Default config")))
    return EXIT_OK


def cmd_validate(args, global_cfg) -> int:
    cfg = validate_experiment(resolve_config_path(args.config, global_cfg))
    console.print(f"[bold green]▶ {cfg.source}: valid {cfg.kind} config[/bold green]")
    console.print(_table("Parameters", sorted(cfg.parameters.items())))
    return EXIT_OK


def cmd_run(args, global_cfg) -> int:
    cfg = validate_experiment(resolve_config_path(args.config, global_cfg))
    if args.seed is not None:
        cfg.seed = args.seed
    with InterruptController():
        report = execute(cfg, args.output_dir, progress=not args.quiet and sys.stderr.isatty())
    if not args.quiet:
        console.print(_table(f"{report.kind} ({report.wall_seconds:.2f} s)", _scalar_rows(report.results)))
        console.print(f"[bold green]▶ Report: {os.path.join(args.output_dir or cfg.output_dir, 'report.json')}[/bold green]")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fnls",
        description="Pseudo-spectral laboratory for the defocusing fractional cubic NLS on the torus",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {get_version()}")
    parser.add_argument("--debug", action="store_true", help="DEBUG logging")
    parser.add_argument("--quiet", action="store_true", help="warnings only, no progress bars or tables")
    parser.add_argument("--global-config", default=None, help="kind -> default config mapping (YAML)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment")
    p_run.add_argument("config", help="experiment YAML, or a kind name to use its default config")
    p_run.add_argument("--output-dir", default=None, help="override output_dir from the config")
    p_run.add_argument("--seed", type=int, default=None, help="override the config seed")
    p_run.set_defaults(func=cmd_run)

    p_val = sub.add_parser("validate", help="parse and validate a config without computing")
    p_val.add_argument("config")
    p_val.set_defaults(func=cmd_validate)

    p_list = sub.add_parser("list-kinds", help="list experiment kinds")
    p_list.set_defaults(func=cmd_list_kinds)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.debug else (logging.WARNING if args.quiet else logging.INFO)
    logging.basicConfig(level=level, format="[%(levelname)s] %(message)s")

    try:
        global_cfg = load_global_config(args.global_config)
        return args.func(args, global_cfg)
    except FnlsError as e:
        console.print(f"[bold red]Error ({type(e).__name__}):[/bold red] {e}")
        return e.exit_code
    except (InterruptException, KeyboardInterrupt):
        console.print("[bold red]▶ Interrupted, no report written.[/bold red]")
        return EXIT_INTERRUPTED


if __name__ == "__main__":
    sys.exit(main())
