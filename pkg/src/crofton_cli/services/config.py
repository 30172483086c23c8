from __future__ import annotations

import copy
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

CONFIG_DIRNAME = ".crofton"
CONFIG_FILENAME = "crofton.yaml"

DEFAULTS: Dict[str, Any] = {
    "evaluator": {
        "theta_count": 4096,
        "mc_samples": 100000,
        "degeneracy_tol": 1.0e-9,
        "threads": 0,
        "max_primitives": 10_000_000,
    },
    "seed": 20240601,
    "render": {
        "size": 800,
        "margin": 20,
        "stroke": "#1f2937",
        "domain_stroke": "#6b7280",
        "witness_stroke": "#dc2626",
    },
}


def get_config_dir() -> Path:
    override = os.getenv("CROFTON_HOME")
    if override:
        return Path(override)
    home = Path(os.path.expanduser("~"))
    return home / CONFIG_DIRNAME


def get_config_path() -> Path:
    return get_config_dir() / CONFIG_FILENAME


def ensure_initialized() -> None:
    """Ensure ~/.crofton/crofton.yaml exists, writing the defaults if missing."""
    cfg_dir = get_config_dir()
    cfg_dir.mkdir(parents=True, exist_ok=True)
    cfg_path = get_config_path()
    if cfg_path.exists():
        return
    with cfg_path.open("w", encoding="utf-8") as f:
        yaml.safe_dump(DEFAULTS, f, sort_keys=False)


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def load_config() -> Dict[str, Any]:
    ensure_initialized()
    cfg_path = get_config_path()
    try:
        with cfg_path.open("r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except Exception:
        data = {}
    if not isinstance(data, dict):
        data = {}
    return _merge(DEFAULTS, data)


def save_config(data: Dict[str, Any]) -> None:
    cfg_path = get_config_path()
    cfg_path.parent.mkdir(parents=True, exist_ok=True)
    with cfg_path.open("w", encoding="utf-8") as f:
        yaml.safe_dump(data, f, sort_keys=False)


def get_setting(section: Optional[str], key: str, default: Any = None) -> Any:
    cfg = load_config()
    scope = cfg if section is None else cfg.get(section) or {}
    return scope.get(key, default) if isinstance(scope, dict) else default


def set_setting(dotted: str, raw_value: str) -> Any:
    """Persist one value given as `section.key` (or a top-level `key`).

    The value is parsed as YAML so numbers and booleans keep their type.
    Returns the stored value.
    """
    dotted = dotted.strip()
    if not dotted:
        raise KeyError("empty setting name")
    value = yaml.safe_load(raw_value) if raw_value.strip() else ""
    cfg = load_config()
    *path, leaf = dotted.split(".")
    scope = cfg
    for part in path:
        nxt = scope.get(part)
        if not isinstance(nxt, dict):
            nxt = {}
            scope[part] = nxt
        scope = nxt
    scope[leaf] = value
    save_config(cfg)
    return value


def _env_int(name: str, fallback: int) -> int:
    try:
        return int(os.getenv(name, ""))
    except ValueError:
        return fallback


@dataclass(frozen=True)
class EvaluatorSettings:
    """Effective evaluator tunables for one CLI run."""

    theta_count: int = 4096
    mc_samples: int = 100000
    degeneracy_tol: float = 1e-9
    threads: int = 0
    max_primitives: int = 10_000_000
    seed: int = 20240601

    @property
    def workers(self) -> int:
        return self.threads if self.threads > 0 else (os.cpu_count() or 1)

    @classmethod
    def from_config(cls, data: Optional[Dict[str, Any]] = None) -> "EvaluatorSettings":
        cfg = load_config() if data is None else _merge(DEFAULTS, data)
        ev = cfg.get("evaluator") or {}
        return cls(
            theta_count=int(ev.get("theta_count", 4096)),
            mc_samples=int(ev.get("mc_samples", 100000)),
            degeneracy_tol=float(ev.get("degeneracy_tol", 1e-9)),
            threads=int(ev.get("threads", 0)),
            max_primitives=int(ev.get("max_primitives", 10_000_000)),
            seed=int(cfg.get("seed", 20240601)),
        )

    @classmethod
    def from_env(cls, base: Optional["EvaluatorSettings"] = None) -> "EvaluatorSettings":
        # Environment wins over the config file; unparsable values are ignored
        base = base or cls.from_config()
        return cls(
            theta_count=_env_int("CROFTON_THETA_COUNT", base.theta_count),
            mc_samples=base.mc_samples,
            degeneracy_tol=base.degeneracy_tol,
            threads=_env_int("CROFTON_THREADS", base.threads),
            max_primitives=base.max_primitives,
            seed=_env_int("CROFTON_SEED", base.seed),
        )


def render_settings() -> Dict[str, Any]:
    return dict(load_config().get("render") or DEFAULTS["render"])
