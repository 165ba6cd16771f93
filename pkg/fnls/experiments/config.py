"""
Experiment configs: one YAML file per experiment.

    kind: m4_scan
    seed: 0
    output_dir: runs/m4_scan
    parameters:
      alpha: 0.75
      ...

Every kind declares its parameters below; `validate_config` coerces types,
fills defaults and rejects unknown or missing keys before anything runs.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import yaml

from fnls.utils.errors import ConfigError

logger = logging.getLogger(__name__)

REQUIRED = object()
TOP_LEVEL_KEYS = ("kind", "seed", "output_dir", "parameters")


def _default_global_config_path() -> Path:
    return Path(__file__).resolve().parent.parent / "config.yaml"


def _resolve(path: str) -> Path:
    """Accept a real path, or fall back to the packaged configs/ directory by file name."""
    cfg_path = Path(path)
    if not cfg_path.is_file():
        maybe_pkg = Path(__file__).resolve().parent.parent / "configs" / cfg_path.name
        if maybe_pkg.is_file():
            cfg_path = maybe_pkg
    return cfg_path


def _read_yaml(path: Path) -> dict:
    try:
        with open(path, "r") as f:
            data = yaml.safe_load(f)
    except FileNotFoundError as e:
        raise ConfigError(f"config file not found: {path}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"could not parse {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must hold a mapping at the top level")
    return data


def load_global_config(path: str = None) -> dict:
    """kind -> default experiment config path."""
    cfg_path = _default_global_config_path() if path is None else Path(path)
    if not cfg_path.is_file():
        logger.info("Global config not found at %s, using defaults", cfg_path)
        return {}
    return _read_yaml(cfg_path)


# ---------- parameter coercion ----------
def _as_float(name, v):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"parameter {name!r} must be a number, got {v!r}")
    return float(v)


def _as_int(name, v):
    if isinstance(v, bool) or not isinstance(v, int):
        if isinstance(v, float) and v.is_integer():
            return int(v)
        raise ConfigError(f"parameter {name!r} must be an integer, got {v!r}")
    return int(v)


def _as_bool(name, v):
    if not isinstance(v, bool):
        raise ConfigError(f"parameter {name!r} must be true or false, got {v!r}")
    return v


def _as_str(name, v):
    if not isinstance(v, str):
        raise ConfigError(f"parameter {name!r} must be a string, got {v!r}")
    return v


def _list_of(scalar):
    def coerce(name, v):
        if not isinstance(v, (list, tuple)):
            raise ConfigError(f"parameter {name!r} must be a list, got {v!r}")
        return [scalar(f"{name}[{i}]", x) for i, x in enumerate(v)]
    return coerce


def _pairs(name, v):
    pairs = _list_of(_list_of(_as_int))(name, v)
    if any(len(p) != 2 for p in pairs):
        raise ConfigError(f"parameter {name!r} must be a list of [p, q] pairs")
    return [tuple(p) for p in pairs]


COERCE = {
    "float": _as_float,
    "int": _as_int,
    "bool": _as_bool,
    "str": _as_str,
    "floats": _list_of(_as_float),
    "ints": _list_of(_as_int),
    "pairs": _pairs,
}


@dataclass(frozen=True)
class Param:
    type: str
    default: Any = REQUIRED
    choices: Optional[Sequence[str]] = None
    nullable: bool = False

    def coerce(self, name: str, value):
        if value is None:
            if self.nullable:
                return None
            raise ConfigError(f"parameter {name!r} may not be null")
        out = COERCE[self.type](name, value)
        if self.choices is not None and out not in self.choices:
            raise ConfigError(f"parameter {name!r} must be one of {list(self.choices)}, got {out!r}")
        return out


@dataclass
class ExperimentConfig:
    kind: str
    seed: int
    output_dir: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    source: Optional[str] = None

    def echo(self) -> dict:
        """Everything needed to re-run the experiment."""
        return {"kind": self.kind, "seed": self.seed, "output_dir": self.output_dir,
                "parameters": dict(self.parameters)}


def validate_parameters(kind: str, raw: dict, schema: Dict[str, Param]) -> dict:
    raw = raw or {}
    if not isinstance(raw, dict):
        raise ConfigError("'parameters' must be a mapping")
    unknown = sorted(set(raw) - set(schema))
    if unknown:
        raise ConfigError(f"unknown parameter(s) for kind {kind!r}: {unknown}; allowed: {sorted(schema)}")
    out = {}
    for name, param in schema.items():
        if name in raw:
            out[name] = param.coerce(name, raw[name])
        elif param.default is REQUIRED:
            raise ConfigError(f"kind {kind!r} requires parameter {name!r}")
        else:
            out[name] = list(param.default) if isinstance(param.default, list) else param.default
    return out


def validate_config(raw: dict, schemas: Dict[str, Dict[str, Param]], source: str = None) -> ExperimentConfig:
    unknown = sorted(set(raw) - set(TOP_LEVEL_KEYS))
    if unknown:
        raise ConfigError(f"unknown top-level key(s): {unknown}; allowed: {list(TOP_LEVEL_KEYS)}")
    kind = raw.get("kind")
    if kind not in schemas:
        raise ConfigError(f"unknown experiment kind {kind!r}; available: {sorted(schemas)}")
    seed = _as_int("seed", raw.get("seed", 0))
    output_dir = _as_str("output_dir", raw.get("output_dir", f"runs/{kind}"))
    params = validate_parameters(kind, raw.get("parameters"), schemas[kind])
    return ExperimentConfig(kind=kind, seed=seed, output_dir=output_dir, parameters=params, source=source)


def load_config(path: str, schemas: Dict[str, Dict[str, Param]]) -> ExperimentConfig:
    cfg_path = _resolve(path)
    cfg = validate_config(_read_yaml(cfg_path), schemas, source=str(cfg_path))
    logger.debug("Loaded %s config from %s", cfg.kind, cfg_path)
    return cfg
