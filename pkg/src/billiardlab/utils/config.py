# src/billiardlab/utils/config.py
from __future__ import annotations
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Literal, Mapping, Optional, Tuple

import yaml

from billiardlab.geometry.base import BilliardLabError
from billiardlab.models import SweepConfig

logger = logging.getLogger(__name__)

OutputFormat = Literal["json", "csv", "svg", "parquet"]
FORMATS: Tuple[str, ...] = ("json", "csv", "svg", "parquet")

DEFAULT_TOLERANCES: Dict[str, float] = {
    "constant": 1e-8,
    "locus": 1e-7,
    "varying": 1e-3,
    "identity": 1e-10,
}

_SWEEP_KEYS = {"n", "a_over_b", "samples", "tolerances", "allow_self_intersecting", "winding", "b"}


class ConfigError(BilliardLabError): ...


@dataclass(frozen=True)
class RunConfig:
    """Validated command-line run settings."""
    subcommand: str
    a: float = 1.5
    b: float = 1.0
    n: int = 3
    samples: int = 256
    t0: float = 0.0
    centers: Tuple[str, ...] = ()
    out: Optional[str] = None
    format: OutputFormat = "json"
    allow_self_intersecting: bool = False
    winding: int = 1
    tolerances: Dict[str, float] = field(default_factory=dict)
    a_over_b: Tuple[float, ...] = ()
    # trajectory only
    angle: float = 2.0
    bounces: int = 32

    def __post_init__(self):
        validate_run_config(self)

    def sweep(self) -> SweepConfig:
        ratios = self.a_over_b or (self.a / self.b,)
        try:
            return SweepConfig(
                n=self.n,
                a_over_b=tuple(ratios),
                samples=self.samples,
                tolerances=dict(self.tolerances),
                allow_self_intersecting=self.allow_self_intersecting,
                winding=self.winding,
                b=self.b,
            )
        except ValueError as e:
            raise ConfigError(str(e)) from e


def validate_run_config(cfg: RunConfig) -> None:
    if not (cfg.a >= cfg.b > 0):
        raise ConfigError(f"Semi-axes must satisfy a >= b > 0, got a={cfg.a}, b={cfg.b}")
    if cfg.n < 3:
        raise ConfigError(f"n must be >= 3, got {cfg.n}")
    if cfg.samples < 8:
        raise ConfigError(f"samples must be >= 8, got {cfg.samples}")
    if cfg.winding < 1:
        raise ConfigError(f"winding must be >= 1, got {cfg.winding}")
    if cfg.winding != 1 and not cfg.allow_self_intersecting:
        raise ConfigError("winding > 1 requires --allow-self-intersecting")
    if cfg.format not in FORMATS:
        raise ConfigError(f"Unknown format {cfg.format!r}; choose from {', '.join(FORMATS)}")
    if cfg.bounces < 1:
        raise ConfigError(f"bounces must be >= 1, got {cfg.bounces}")
    for r in cfg.a_over_b:
        if r < 1.0:
            raise ConfigError(f"a/b ratios must be >= 1, got {r}")


def resolve_tolerance(overrides: Mapping[str, float], name: str, kind: str) -> float:
    """Per-check override first, then per-kind override, then the built-in default."""
    if name in overrides:
        return float(overrides[name])
    if kind in overrides:
        return float(overrides[kind])
    return DEFAULT_TOLERANCES[kind]


def load_sweep_config(path: str) -> Dict[str, Any]:
    """
    Read sweep settings from YAML. Returns only the recognised keys; the caller merges
    them under the command-line flags.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh) or {}
    except OSError as e:
        raise ConfigError(f"Cannot read config {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML in {path}: {e}") from e
    if not isinstance(raw, dict):
        raise ConfigError(f"Config {path} must be a mapping, got {type(raw).__name__}")

    unknown = sorted(set(raw) - _SWEEP_KEYS)
    if unknown:
        logger.warning(f"Ignoring unknown config keys in {path}: {', '.join(unknown)}")
    out = {k: v for k, v in raw.items() if k in _SWEEP_KEYS}
    if "a_over_b" in out:
        ratios = out["a_over_b"]
        out["a_over_b"] = tuple(float(r) for r in (ratios if isinstance(ratios, list) else [ratios]))
    if "tolerances" in out:
        tols = out["tolerances"]
        if not isinstance(tols, dict):
            raise ConfigError("tolerances must be a mapping of name -> value")
        out["tolerances"] = {str(k): float(v) for k, v in tols.items()}
    logger.info(f"Loaded sweep config from {path}: {sorted(out)}")
    return out


def merge_config(file_values: Mapping[str, Any], flags: Mapping[str, Any]) -> Dict[str, Any]:
    """File values for RunConfig fields, overridden by every flag given on the command line."""
    merged = {k: v for k, v in file_values.items() if k in RunConfig.__dataclass_fields__}
    merged.update(flags)
    return merged


def build_run_config(subcommand: str, values: Mapping[str, Any], **extra: Any) -> RunConfig:
    try:
        return RunConfig(subcommand=subcommand, **values, **extra)
    except TypeError as e:
        raise ConfigError(f"Invalid config values: {e}") from e
