"""Flat INI-style run configuration.

Sections mirror the module configs: ``[model]`` feeds ModelParams,
``[integrator]`` the stepper tolerances, ``[recurrence]`` the network
inference settings and ``[experiment]`` the sweep protocol.  Every
physical parameter has a named key; omitted keys keep their defaults,
so an empty file reproduces the reference experiment.

The sweep grid can be given either explicitly (``sweep_values`` as a
comma list) or as ``sweep_grid = start:stop:count``.  ``dump_config``
renders a complete snapshot that parses back to an equal configuration;
manifests embed that text verbatim.
"""

from __future__ import annotations

import configparser
from pathlib import Path

import numpy as np

from .experiment import ExperimentConfig
from .integrate import IntegratorConfig
from .model import ModelParams
from .recurrence import RecurrenceConfig

__all__ = ["ConfigError", "load_config", "loads_config", "dump_config"]


class ConfigError(ValueError):
    """Malformed configuration file; message names the offending key."""


def _parse_float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"could not parse {text!r} as a number") from None


def _parse_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"could not parse {text!r} as an integer") from None


def _parse_str(text: str) -> str:
    return text.strip()


def _parse_optional_float(text: str):
    return None if text.strip().lower() == "none" else _parse_float(text)


def _parse_optional_str(text: str):
    text = text.strip()
    return None if text.lower() == "none" else text


def _parse_vector(text: str):
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ConfigError("empty value")
    values = [_parse_float(p) for p in parts]
    return values[0] if len(values) == 1 else values


def _parse_float_list(text: str) -> tuple[float, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ConfigError("empty value")
    return tuple(_parse_float(p) for p in parts)


def _parse_grid(text: str) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid must be start:stop:count, got {text!r}")
    start, stop = _parse_float(parts[0]), _parse_float(parts[1])
    count = _parse_int(parts[2])
    if count < 1:
        raise ConfigError("grid count must be at least 1")
    return tuple(np.linspace(start, stop, count).tolist())


_MODEL_KEYS = {
    "n_osc": _parse_int,
    "masses": _parse_vector,
    "alpha": _parse_float,
    "k_lin": _parse_vector,
    "k_coupling": _parse_float,
    "k_cubic": _parse_vector,
    "force_amp": _parse_float,
    "force_freq": _parse_float,
}
_INTEGRATOR_KEYS = {
    "rel_tol": _parse_float,
    "abs_tol": _parse_float,
    "max_steps": _parse_int,
}
_RECURRENCE_KEYS = {
    "embed_dim": _parse_int,
    "embed_delay": _parse_int,
    "threshold_mode": _parse_str,
    "epsilon": _parse_optional_float,
    "recurrence_rate": _parse_float,
    "metric": _parse_str,
    "direction_tol": _parse_float,
}
_EXPERIMENT_KEYS = {
    "sweep_values": _parse_float_list,
    "sweep_grid": _parse_grid,
    "target_index": _parse_int,
    "ensemble_size": _parse_int,
    "ic_low": _parse_float,
    "ic_high": _parse_float,
    "seed": _parse_int,
    "t_end": _parse_float,
    "dt_out": _parse_float,
    "noise_level": _parse_float,
    "param_jitter": _parse_float,
    "reference": _parse_optional_str,
}
_SECTIONS = {
    "model": _MODEL_KEYS,
    "integrator": _INTEGRATOR_KEYS,
    "recurrence": _RECURRENCE_KEYS,
    "experiment": _EXPERIMENT_KEYS,
}


def _section_kwargs(parser: configparser.RawConfigParser, section: str) -> dict:
    out = {}
    if not parser.has_section(section):
        return out
    for key, raw in parser.items(section):
        if key not in _SECTIONS[section]:
            raise ConfigError(f"unknown key {key!r} in [{section}]")
        try:
            out[key] = _SECTIONS[section][key](raw)
        except ConfigError as exc:
            raise ConfigError(f"[{section}] {key}: {exc}") from None
    return out


def loads_config(text: str) -> ExperimentConfig:
    """Build an ExperimentConfig from INI text (empty text = defaults)."""
    parser = configparser.RawConfigParser()
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config syntax error: {exc}") from None
    for section in parser.sections():
        if section not in _SECTIONS:
            raise ConfigError(f"unknown section [{section}]")

    experiment = _section_kwargs(parser, "experiment")
    if "sweep_grid" in experiment:
        if "sweep_values" in experiment:
            raise ConfigError(
                "[experiment] give either sweep_values or sweep_grid, not both"
            )
        experiment["sweep_values"] = experiment.pop("sweep_grid")

    try:
        model = ModelParams(**_section_kwargs(parser, "model"))
        integrator = IntegratorConfig(**_section_kwargs(parser, "integrator"))
        recurrence = RecurrenceConfig(**_section_kwargs(parser, "recurrence"))
        return ExperimentConfig(
            model=model, integrator=integrator, recurrence=recurrence, **experiment
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None


def load_config(path: str | Path) -> ExperimentConfig:
    """Read and parse a configuration file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    return loads_config(text)


def _fmt_float(value: float) -> str:
    return repr(float(value))


def _fmt_vector(vec) -> str:
    arr = np.asarray(vec, dtype=float)
    if arr.ndim == 0:
        return _fmt_float(float(arr))
    if np.all(arr == arr.flat[0]):
        return _fmt_float(float(arr.flat[0]))
    return ",".join(_fmt_float(v) for v in arr.tolist())


def dump_config(cfg: ExperimentConfig) -> str:
    """Render a complete configuration snapshot as INI text.

    The output parses back (``loads_config``) to a configuration equal
    to ``cfg`` field for field, which is what makes manifests replayable.
    """
    m, r, g = cfg.model, cfg.recurrence, cfg.integrator
    lines = [
        "[model]",
        f"n_osc = {m.n_osc}",
        f"masses = {_fmt_vector(m.masses)}",
        f"alpha = {_fmt_float(m.alpha)}",
        f"k_lin = {_fmt_vector(m.k_lin)}",
        f"k_coupling = {_fmt_float(m.k_coupling)}",
        f"k_cubic = {_fmt_vector(m.k_cubic)}",
        f"force_amp = {_fmt_float(m.force_amp)}",
        f"force_freq = {_fmt_float(m.force_freq)}",
        "",
        "[integrator]",
        f"rel_tol = {_fmt_float(g.rel_tol)}",
        f"abs_tol = {_fmt_float(g.abs_tol)}",
        f"max_steps = {g.max_steps}",
        "",
        "[recurrence]",
        f"embed_dim = {r.embed_dim}",
        f"embed_delay = {r.embed_delay}",
        f"threshold_mode = {r.threshold_mode}",
        f"epsilon = {'none' if r.epsilon is None else _fmt_float(r.epsilon)}",
        f"recurrence_rate = {_fmt_float(r.recurrence_rate)}",
        f"metric = {r.metric}",
        f"direction_tol = {_fmt_float(r.direction_tol)}",
        "",
        "[experiment]",
        f"sweep_values = {','.join(_fmt_float(v) for v in cfg.sweep_values)}",
        f"target_index = {cfg.target_index}",
        f"ensemble_size = {cfg.ensemble_size}",
        f"ic_low = {_fmt_float(cfg.ic_low)}",
        f"ic_high = {_fmt_float(cfg.ic_high)}",
        f"seed = {cfg.seed}",
        f"t_end = {_fmt_float(cfg.t_end)}",
        f"dt_out = {_fmt_float(cfg.dt_out)}",
        f"noise_level = {_fmt_float(cfg.noise_level)}",
        f"param_jitter = {_fmt_float(cfg.param_jitter)}",
        f"reference = {cfg.reference if cfg.reference is not None else 'none'}",
        "",
    ]
    return "\n".join(lines)
