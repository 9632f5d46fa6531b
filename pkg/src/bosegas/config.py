"""YAML configuration parsing, validation, and deterministic hashing."""

from __future__ import annotations

import hashlib

import numpy as np
import yaml

from .dynamics import SimConfig
from .errors import ConfigError

__all__ = ["load_config", "config_sha256", "sim_config_from", "dump_effective"]


def load_config(path) -> dict:
    """Parse a YAML config file into a plain dict (empty file -> {})."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        cfg = yaml.safe_load(raw)
    except yaml.YAMLError as exc:
        raise ConfigError(f"config parse error in {path}: {exc}") from exc
    if cfg is None:
        cfg = {}
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a mapping")
    return cfg


def config_sha256(path) -> str:
    """Hash of the raw config bytes (embedded in every output file)."""
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _section(cfg, name, required=True) -> dict:
    sec = cfg.get(name)
    if sec is None:
        if required:
            raise ConfigError(f"missing config section '{name}'")
        return {}
    if not isinstance(sec, dict):
        raise ConfigError(f"config section '{name}' must be a mapping")
    return sec


def _get(sec, key, default=None, cast=float, positive=False, name=""):
    if key not in sec:
        if default is None:
            raise ConfigError(f"missing config key '{name}{key}'")
        return default
    try:
        val = cast(sec[key])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"config key '{name}{key}' invalid: {exc}") from exc
    if positive and not val > 0:
        raise ConfigError(f"config key '{name}{key}' must be positive")
    return val


def sim_config_from(cfg: dict) -> SimConfig:
    grid = _section(cfg, "grid")
    pot = _section(cfg, "potential")
    init = _section(cfg, "initial")
    time = _section(cfg, "time")
    d = _get(grid, "d", cast=int, positive=True, name="grid.")
    P0 = init.get("P0")
    if P0 is None:
        raise ConfigError("missing config key 'initial.P0'")
    P0 = tuple(float(v) for v in np.atleast_1d(P0))
    beta0 = init.get("beta0") or {}
    sim = SimConfig(
        d=d,
        n_per_dim=_get(grid, "n_per_dim", cast=int, positive=True, name="grid."),
        box_length=_get(grid, "box_length", positive=True, name="grid."),
        n=_get(pot, "n", positive=True, name="potential."),
        s=_get(pot, "s", positive=True, name="potential."),
        rho0=_get(pot, "rho0", positive=True, name="potential."),
        P0=P0,
        beta0_amplitude=_get(beta0, "amplitude", default=0.0, name="beta0."),
        beta0_width=_get(beta0, "width", default=1.0, name="beta0."),
        beta0_phase=_get(beta0, "phase", default=0.0, name="beta0."),
        dt=_get(time, "dt", positive=True, name="time."),
        T=_get(time, "T", default=0.0, name="time."),
        sample_interval=_get(time, "sample_interval", positive=True, name="time."),
    )
    sim.validate()
    return sim


def dump_effective(cfg: dict) -> str:
    """Canonical re-serialization of a config (round-trip check target)."""
    return yaml.safe_dump(cfg, sort_keys=True, default_flow_style=False)
