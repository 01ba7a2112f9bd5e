"""Pipeline configuration.

One YAML file governs every stage (ingest, train, map, serve).  Precedence
is CLI flags over file values over the defaults below; environment
variables THEMESCOPE_<KEY> (for example THEMESCOPE_PORT) slot between file
and flags so deployments can override paths and ports without editing the
file.
"""

from __future__ import annotations

import os
from pathlib import Path

import yaml

from .errors import ConfigError

DEFAULTS: dict = {
    "corpus": "manifest.jsonl",
    "corpus_format": "manifest",
    "bundle": "artifacts/bundle.json",
    "model": "artifacts/model.json",
    "map": "artifacts/map.json",
    "sessions": "artifacts/sessions.json",
    "chunk_count": 30,
    "min_df": 2,
    "max_df_fraction": 0.9,
    "min_token_length": 3,
    "topics": 85,
    "alpha": None,       # null means 50/topics
    "beta": 0.01,
    "iterations": 1000,
    "seed": 0,
    "tau": 0.05,
    "theta_min": 0.05,
    "clusters": None,    # null means cut at the largest height gap
    "top_terms": 30,
    "max_selection": 6,
    "host": "127.0.0.1",
    "port": 8765,
    "cors": [],
    "ui_dir": None,
}

_ENV_PREFIX = "THEMESCOPE_"

# How to parse env-var strings for non-string keys.
_CASTS = {
    "chunk_count": int, "min_df": int, "min_token_length": int,
    "topics": int, "iterations": int, "seed": int, "clusters": int,
    "top_terms": int, "max_selection": int, "port": int,
    "max_df_fraction": float, "alpha": float, "beta": float,
    "tau": float, "theta_min": float,
    "cors": lambda v: [o.strip() for o in v.split(",") if o.strip()],
}


def load_config(path: str | Path | None = None) -> dict:
    """Defaults, overlaid with the YAML file (if any), then environment."""
    config = dict(DEFAULTS)
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        try:
            loaded = yaml.safe_load(path.read_text(encoding="utf-8"))
        except yaml.YAMLError as exc:
            raise ConfigError(f"cannot parse config {path}: {exc}")
        if loaded is None:
            loaded = {}
        if not isinstance(loaded, dict):
            raise ConfigError(f"config {path} must be a mapping")
        unknown = sorted(set(loaded) - set(DEFAULTS))
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        config.update(loaded)
    for key in DEFAULTS:
        raw = os.environ.get(_ENV_PREFIX + key.upper())
        if raw is None:
            continue
        cast = _CASTS.get(key, str)
        try:
            config[key] = cast(raw)
        except ValueError:
            raise ConfigError(
                f"bad value for {_ENV_PREFIX + key.upper()}: {raw!r}")
    return config
