"""Job configuration: a YAML (or JSON) document, overridden by CLI flags."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import yaml

from ..errors import ConfigError

MODES = ("delaunay", "darboux", "bianchi", "resonance-catalog", "verify", "export")
CHECK_NAMES = ("conformal", "mean_curvature", "closure", "dihedral", "parallel_distance")
DEFAULT_TOLERANCES = {
    "conformal": 1e-6,
    "mean_curvature": 1e-4,
    "closure": 1e-8,
    "dihedral": 2e-2,
    "parallel_distance": 1e-8,
}


@dataclass(frozen=True)
class StageConfig:
    pair: tuple
    branch: int = 1
    coeffs: tuple | None = None
    centre: float | None = None


@dataclass(frozen=True)
class JobConfig:
    mode: str = "delaunay"
    necksize: float = 0.5
    mu: float | None = None
    pair: tuple | None = None
    branch: int = 1
    coeffs: tuple = (1 + 0j, 1 + 0j)
    stages: tuple = ()
    cover: int | None = None
    x_range: tuple | None = None
    nx: int = 81
    ny: int | None = None
    m_max: int | None = None
    n_max: int = 5
    backend: str = "auto"
    out: str | None = None
    report: str | None = None
    tolerances: dict = field(default_factory=dict)
    h2: float = 1e-3
    centre_spacing: float = 3.0

    def tolerance(self, name: str) -> float:
        return float(self.tolerances.get(name, DEFAULT_TOLERANCES[name]))


def parse_complex(text) -> complex:
    if isinstance(text, (int, float, complex)):
        return complex(text)
    s = str(text).strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError as exc:
        raise ConfigError(f"cannot parse complex number {text!r}") from exc


def parse_coeffs(value) -> tuple:
    if isinstance(value, str):
        value = value.split(",")
    try:
        mp, mm = value
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"coefficients need exactly two entries, got {value!r}") from exc
    out = (parse_complex(mp), parse_complex(mm))
    if out == (0, 0):
        raise ConfigError("coefficients must not both vanish")
    return out


def parse_int_pair(value, what: str) -> tuple:
    if isinstance(value, str):
        value = value.split(",")
    try:
        a, b = (int(v) for v in value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{what} must be two integers, got {value!r}") from exc
    return a, b


def parse_float_pair(value, what: str) -> tuple:
    if isinstance(value, str):
        value = value.split(",")
    try:
        a, b = (float(v) for v in value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{what} must be two numbers, got {value!r}") from exc
    return a, b


def parse_branch(value) -> int:
    if value in (1, "+", "+1", "plus"):
        return 1
    if value in (-1, "-", "-1", "minus"):
        return -1
    raise ConfigError(f"branch must be + or -, got {value!r}")


def parse_stage(value) -> StageConfig:
    """Accepts ``"m,n"``, ``"m,n,centre"`` or a mapping with pair/branch/coeffs/centre."""
    if isinstance(value, str):
        parts = value.split(",")
        if len(parts) not in (2, 3):
            raise ConfigError(f"stage must read m,n or m,n,centre, got {value!r}")
        pair = parse_int_pair(parts[:2], "stage pair")
        centre = float(parts[2]) if len(parts) == 3 else None
        return StageConfig(pair=pair, centre=centre)
    if isinstance(value, dict):
        unknown = set(value) - {"pair", "branch", "coeffs", "centre"}
        if unknown:
            raise ConfigError(f"unknown stage keys {sorted(unknown)}")
        if "pair" not in value:
            raise ConfigError("stage needs a pair")
        coeffs = parse_coeffs(value["coeffs"]) if value.get("coeffs") is not None else None
        centre = float(value["centre"]) if value.get("centre") is not None else None
        if coeffs is not None and centre is not None:
            raise ConfigError("a stage takes either coeffs or centre, not both")
        return StageConfig(parse_int_pair(value["pair"], "stage pair"),
                           parse_branch(value.get("branch", "+")), coeffs, centre)
    raise ConfigError(f"cannot parse stage {value!r}")


def parse_tolerances(value) -> dict:
    if value is None:
        return {}
    if isinstance(value, (list, tuple)):
        items = []
        for entry in value:
            if "=" not in entry:
                raise ConfigError(f"tolerance override must read NAME=VALUE, got {entry!r}")
            k, v = entry.split("=", 1)
            items.append((k.strip(), v))
    elif isinstance(value, dict):
        items = list(value.items())
    else:
        raise ConfigError("tolerances must be a mapping")
    out = {}
    for k, v in items:
        if k not in CHECK_NAMES:
            raise ConfigError(f"unknown tolerance {k!r}; known: {', '.join(CHECK_NAMES)}")
        try:
            out[k] = float(v)
        except ValueError as exc:
            raise ConfigError(f"tolerance {k} must be a number, got {v!r}") from exc
    return out


_FIELD_NAMES = {f.name for f in fields(JobConfig)}


def _normalise(raw: dict) -> dict:
    """Map document/flag values onto JobConfig field types."""
    raw = {k.replace("-", "_"): v for k, v in raw.items() if v is not None}
    grid = raw.pop("grid", None)
    if grid is not None:
        if isinstance(grid, dict):
            for key in ("nx", "ny"):
                if key in grid:
                    raw[key] = grid[key]
            if "x_min" in grid or "x_max" in grid:
                raw["x_range"] = (grid.get("x_min"), grid.get("x_max"))
            if "cover" in grid:
                raw["cover"] = grid["cover"]
        else:
            raw["nx"], raw["ny"] = parse_int_pair(grid, "grid")
    if "xrange" in raw:
        raw["x_range"] = raw.pop("xrange")
    unknown = set(raw) - _FIELD_NAMES
    if unknown:
        raise ConfigError(f"unknown configuration keys {sorted(unknown)}")
    out = {}
    for key, val in raw.items():
        if key == "mode":
            if val not in MODES:
                raise ConfigError(f"mode must be one of {MODES}, got {val!r}")
            out[key] = val
        elif key in ("necksize", "mu", "h2", "centre_spacing"):
            out[key] = _number(val, key)
        elif key == "pair":
            out[key] = parse_int_pair(val, "pair")
        elif key == "branch":
            out[key] = parse_branch(val)
        elif key == "coeffs":
            out[key] = parse_coeffs(val)
        elif key == "stages":
            out[key] = tuple(parse_stage(s) for s in val)
        elif key == "x_range":
            out[key] = parse_float_pair(val, "x range")
        elif key in ("cover", "nx", "ny", "m_max", "n_max"):
            out[key] = _positive_int(val, key)
        elif key == "tolerances":
            out[key] = parse_tolerances(val)
        elif key == "backend":
            if val not in ("auto", "closed", "ode"):
                raise ConfigError(f"backend must be auto, closed or ode, got {val!r}")
            out[key] = val
        else:
            out[key] = str(val)
    return out


def _number(val, key) -> float:
    try:
        x = float(val)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key} must be a number, got {val!r}") from exc
    if not math.isfinite(x):
        raise ConfigError(f"{key} must be finite")
    return x


def _positive_int(val, key) -> int:
    try:
        x = int(val)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key} must be an integer, got {val!r}") from exc
    if x < 1 or x != float(val):
        raise ConfigError(f"{key} must be a positive integer, got {val!r}")
    return x


def load_document(path) -> dict:
    text = Path(path).read_text()
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must contain a mapping at top level")
    return data


def build_config(document: dict | None = None, overrides: dict | None = None) -> JobConfig:
    """Merge a parsed document with flag overrides (flags win) and validate."""
    merged = _normalise(dict(document or {}))
    over = _normalise(dict(overrides or {}))
    if "tolerances" in over and "tolerances" in merged:
        over["tolerances"] = {**merged["tolerances"], **over["tolerances"]}
    merged.update(over)
    cfg = JobConfig(**merged)
    if cfg.mu is not None and cfg.pair is not None:
        raise ConfigError("give either mu or pair, not both")
    if cfg.x_range is not None and not cfg.x_range[0] < cfg.x_range[1]:
        raise ConfigError("x range must be increasing")
    if cfg.nx < 2 or (cfg.ny is not None and cfg.ny < 2):
        raise ConfigError("grids need at least two samples per direction")
    return cfg


def with_mode(cfg: JobConfig, mode: str) -> JobConfig:
    return replace(cfg, mode=mode)
