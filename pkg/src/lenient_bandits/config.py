"""Flat key-value experiment config files.

Grammar (one experiment per file, diff-friendly):

    # comment
    key = value
    key = [item, item, ...]

Scalars are parsed as int, then float, then bare string.  List items follow
the same rule.  Keys used by the subcommands:

    simulate:  means, kind, policies, gap_functions, horizon, n_seeds,
               base_seed, checkpoints (optional)
    bounds:    means, kind, eps (optional), gap_functions
    ratio:     mu2, eps, gap_function, mu1_grid = [min, max, step]

Command-line overrides are ``key=value`` tokens applied on top of the file
before validation; list values reuse the bracket syntax.
"""

from __future__ import annotations

from .environments import BanditInstance
from .gap_functions import GapFunction
from .simulator import ExperimentConfig

__all__ = [
    "ConfigError",
    "parse_config_text",
    "load_config",
    "apply_overrides",
    "build_experiment_config",
    "build_bounds_params",
    "build_ratio_params",
]


class ConfigError(Exception):
    """Raised with a human-readable message naming the offending line or key."""


def _parse_scalar(token: str):
    token = token.strip()
    try:
        return int(token)
    except ValueError:
        pass
    try:
        return float(token)
    except ValueError:
        pass
    return token


def _parse_value(text: str, lineno: int):
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise ConfigError(f"line {lineno}: unterminated list {text!r}")
        inner = text[1:-1].strip()
        if not inner:
            return []
        return [_parse_scalar(item) for item in inner.split(",")]
    if not text:
        raise ConfigError(f"line {lineno}: missing value")
    return _parse_scalar(text)


def parse_config_text(text: str) -> dict:
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        values[key] = _parse_value(value, lineno)
    return values


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config_text(text)


def apply_overrides(values: dict, overrides: list[str]) -> dict:
    out = dict(values)
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        key, _, value = item.partition("=")
        out[key.strip()] = _parse_value(value, 0)
    return out


def _require(values: dict, key: str):
    if key not in values:
        raise ConfigError(f"missing required config key {key!r}")
    return values[key]


def _as_float_list(values: dict, key: str) -> list[float]:
    raw = _require(values, key)
    if not isinstance(raw, list) or not raw:
        raise ConfigError(f"config key {key!r} must be a non-empty list")
    out = []
    for item in raw:
        if not isinstance(item, (int, float)):
            raise ConfigError(f"config key {key!r} must contain numbers, got {item!r}")
        out.append(float(item))
    return out


def _build_instance(values: dict) -> BanditInstance:
    means = _as_float_list(values, "means")
    kind = values.get("kind", "bernoulli")
    try:
        return BanditInstance.parse_kind(means, str(kind))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _build_gap_functions(values: dict, key: str = "gap_functions") -> tuple[GapFunction, ...]:
    raw = _require(values, key)
    if not isinstance(raw, list) or not raw:
        raise ConfigError(f"config key {key!r} must be a non-empty list")
    try:
        return tuple(GapFunction.parse(str(item)) for item in raw)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def build_experiment_config(values: dict) -> ExperimentConfig:
    instance = _build_instance(values)
    raw_policies = _require(values, "policies")
    if not isinstance(raw_policies, list) or not raw_policies:
        raise ConfigError("config key 'policies' must be a non-empty list")
    policies = tuple(str(p) for p in raw_policies)
    gap_functions = _build_gap_functions(values)
    horizon = _require(values, "horizon")
    n_seeds = _require(values, "n_seeds")
    base_seed = values.get("base_seed", 0)
    checkpoints = tuple(values.get("checkpoints", ()))
    try:
        return ExperimentConfig(
            instance=instance,
            policies=policies,
            gap_functions=gap_functions,
            horizon=int(horizon),
            n_seeds=int(n_seeds),
            base_seed=int(base_seed),
            checkpoints=checkpoints,
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def build_bounds_params(values: dict) -> tuple[BanditInstance, tuple[GapFunction, ...]]:
    instance = _build_instance(values)
    if instance.kind != "bernoulli":
        raise ConfigError("bound coefficients require a Bernoulli instance")
    return instance, _build_gap_functions(values)


def build_ratio_params(values: dict):
    """Returns (mu2, eps, gap_function, mu1 grid values)."""
    mu2 = _require(values, "mu2")
    eps = _require(values, "eps")
    if not isinstance(mu2, (int, float)) or not 0.0 <= mu2 <= 1.0:
        raise ConfigError("config key 'mu2' must be a number in [0, 1]")
    if not isinstance(eps, (int, float)) or not 0.0 <= eps < 1.0:
        raise ConfigError("config key 'eps' must be a number in [0, 1)")
    try:
        gap = GapFunction.parse(str(_require(values, "gap_function")))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    grid_spec = _require(values, "mu1_grid")
    if not isinstance(grid_spec, list) or len(grid_spec) != 3:
        raise ConfigError("config key 'mu1_grid' must be [min, max, step]")
    lo, hi, step = (float(v) for v in grid_spec)
    if step <= 0 or hi < lo:
        raise ConfigError("config key 'mu1_grid' must satisfy min <= max and step > 0")
    grid = []
    x = lo
    while x <= hi + 1e-12:
        grid.append(round(x, 12))
        x += step
    return float(mu2), float(eps), gap, grid
