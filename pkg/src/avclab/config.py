"""Experiment configuration: one flat TOML document per run.

parse_config validates the whole document at once and reports every
problem together, naming the offending keys. The validated spec keeps
the normalized parameter dict plus a short content hash so emitted rows
can be traced back to the exact configuration that produced them.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .jammers import ATTACKS

COMMANDS = ("region", "simulate", "listdec", "strip-census", "blob", "caps-selftest")

# commands whose results depend on drawn randomness; these require a seed
STOCHASTIC_COMMANDS = frozenset({"simulate", "listdec", "strip-census", "blob"})

_REGIMES = ("none", "log_n", "linear", "infinite")
_SURVEY_MODES = ("worst_shell", "shell")


class ConfigError(ValueError):
    def __init__(self, errors: list[str]) -> None:
        super().__init__("; ".join(errors))
        self.errors = list(errors)


@dataclass(frozen=True)
class ExperimentSpec:
    command: str
    seed: int
    output_path: str
    parameters: dict

    @property
    def config_hash(self) -> str:
        return config_hash({"command": self.command, "seed": self.seed,
                            **self.parameters})


def _render(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_render(v) for v in value) + "]"
    return str(value)


def config_hash(doc: dict) -> str:
    """12 hex chars identifying the document (output path excluded)."""
    lines = sorted(
        f"{key}={_render(val)}" for key, val in doc.items() if key != "output"
    )
    digest = hashlib.sha256("\n".join(lines).encode("utf-8")).hexdigest()
    return digest[:12]


@dataclass(frozen=True)
class _Key:
    kind: str  # "int" | "float" | "str" | "float_list"
    required: bool = False
    default: object = None
    minimum: float | None = None
    exclusive: bool = False  # minimum is exclusive
    maximum: float | None = None
    choices: tuple | None = None


_CODEBOOK_KEYS = {
    "n": _Key("int", required=True, minimum=1),
    "rate": _Key("float", required=True, minimum=0.0),
    "key_rate": _Key("float", default=0.0, minimum=0.0),
    "transmit_power": _Key("float", default=1.0, minimum=0.0, exclusive=True),
}

_ATTACK_OPT_KEYS = {
    "alpha": _Key("float", minimum=0.0, exclusive=True),
    "epsilon_babble": _Key("float", minimum=0.0, exclusive=True, maximum=1.0),
    "estimate": _Key("str", choices=("observation", "true")),
}

_SCHEMAS: dict[str, dict[str, _Key]] = {
    "region": {
        "transmit_power": _Key("float", default=1.0, minimum=0.0, exclusive=True),
        "obs_ratios": _Key("float_list", required=True, minimum=0.0),
        "jam_ratios": _Key("float_list", required=True, minimum=0.0, exclusive=True),
        "regime": _Key("str", default="none", choices=_REGIMES),
        "key_rate": _Key("float", minimum=0.0, exclusive=True),
    },
    "simulate": {
        **_CODEBOOK_KEYS,
        "jam_power": _Key("float", required=True, minimum=0.0, exclusive=True),
        "obs_noise_var": _Key("float", required=True, minimum=0.0),
        "attack": _Key("str", default="none", choices=tuple(sorted(ATTACKS))),
        "trials": _Key("int", required=True, minimum=1),
        "decoder": _Key("str", default="min_distance",
                        choices=("min_distance", "list")),
        "list_radius": _Key("float", minimum=0.0),
        "mode": _Key("str", default="auto", choices=("auto", "dense", "ensemble")),
        "budget": _Key("int", default=1 << 22, minimum=1),
        **_ATTACK_OPT_KEYS,
    },
    "listdec": {
        **_CODEBOOK_KEYS,
        "attack": _Key("str", required=True,
                       choices=_SURVEY_MODES + tuple(sorted(ATTACKS))),
        "radius": _Key("float", required=True, minimum=0.0),
        "centers": _Key("int", required=True, minimum=1),
        "key": _Key("int", default=0, minimum=0),
        "jam_power": _Key("float", minimum=0.0, exclusive=True),
        "obs_noise_var": _Key("float", minimum=0.0),
        **_ATTACK_OPT_KEYS,
    },
    "strip-census": {
        **_CODEBOOK_KEYS,
        "obs_noise_var": _Key("float", required=True, minimum=0.0, exclusive=True),
        "epsilon": _Key("float", required=True, minimum=0.0, exclusive=True,
                        maximum=1.0),
        "delta": _Key("float", required=True, minimum=0.0, exclusive=True),
        "delta_z": _Key("float", default=0.0, minimum=0.0),
        "z_mode": _Key("str", default="typical_shell",
                       choices=("typical_shell", "observe")),
        "message": _Key("int", default=0, minimum=0),
        "key": _Key("int", default=0, minimum=0),
        "ogs_epsilon": _Key("float", minimum=0.0),
    },
    "blob": {
        **_CODEBOOK_KEYS,
        "obs_noise_var": _Key("float", required=True, minimum=0.0, exclusive=True),
        "jam_power": _Key("float", required=True, minimum=0.0, exclusive=True),
        "epsilon": _Key("float", required=True, minimum=0.0, exclusive=True,
                        maximum=1.0),
        "delta": _Key("float", required=True, minimum=0.0, exclusive=True),
        "ogs_epsilon": _Key("float", minimum=0.0),
        "radius": _Key("float", required=True, minimum=0.0),
        "draws": _Key("int", required=True, minimum=1),
        "message": _Key("int", default=0, minimum=0),
        "key": _Key("int", default=0, minimum=0),
    },
    "caps-selftest": {
        "grid": _Key("int", default=20, minimum=2),
    },
}


def _check_scalar(key: str, value, rule: _Key, errors: list[str]):
    if rule.kind == "int":
        if isinstance(value, bool) or not isinstance(value, int):
            errors.append(f"{key}: expected an integer, got {value!r}")
            return None
    elif rule.kind == "float":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            errors.append(f"{key}: expected a number, got {value!r}")
            return None
        value = float(value)
    elif rule.kind == "str":
        if not isinstance(value, str):
            errors.append(f"{key}: expected a string, got {value!r}")
            return None
    if rule.choices is not None and value not in rule.choices:
        errors.append(f"{key}: must be one of {', '.join(map(str, rule.choices))}")
        return None
    if rule.minimum is not None and isinstance(value, (int, float)):
        if rule.exclusive and not value > rule.minimum:
            errors.append(f"{key}: must be > {rule.minimum:g}, got {value!r}")
            return None
        if not rule.exclusive and value < rule.minimum:
            errors.append(f"{key}: must be >= {rule.minimum:g}, got {value!r}")
            return None
    if rule.maximum is not None and isinstance(value, (int, float)):
        if not value < rule.maximum:
            errors.append(f"{key}: must be < {rule.maximum:g}, got {value!r}")
            return None
    return value


def _check_key(key: str, value, rule: _Key, errors: list[str]):
    if rule.kind == "float_list":
        if not isinstance(value, (list, tuple)) or not value:
            errors.append(f"{key}: expected a nonempty list of numbers")
            return None
        out = []
        for i, item in enumerate(value):
            got = _check_scalar(f"{key}[{i}]", item,
                                _Key("float", minimum=rule.minimum,
                                     exclusive=rule.exclusive), errors)
            if got is None:
                return None
            out.append(got)
        return out
    return _check_scalar(key, value, rule, errors)


def _conditional_checks(command: str, params: dict, errors: list[str]) -> None:
    if command == "region":
        regime = params.get("regime")
        if regime == "linear" and "key_rate" not in params:
            errors.append("key_rate: required when regime = 'linear'")
        if regime != "linear" and "key_rate" in params:
            errors.append("key_rate: only meaningful when regime = 'linear'")
    if command == "simulate":
        if params.get("decoder") == "list" and "list_radius" not in params:
            errors.append("list_radius: required when decoder = 'list'")
        if params.get("decoder") != "list" and "list_radius" in params:
            errors.append("list_radius: only meaningful when decoder = 'list'")
    if command == "listdec":
        if params.get("attack") in ATTACKS:
            for need in ("jam_power", "obs_noise_var"):
                if need not in params:
                    errors.append(
                        f"{need}: required when attack is a jammer strategy"
                    )
    if command in ("strip-census", "blob"):
        eps, dlt = params.get("epsilon"), params.get("delta")
        if eps is not None and dlt is not None:
            ratio = eps / dlt
            if abs(ratio - round(ratio)) > 1e-9 or round(ratio) < 1:
                errors.append(
                    "epsilon: must be a positive integer multiple of delta"
                )


def parse_config(doc: dict) -> ExperimentSpec:
    """Validate a raw document; raises ConfigError listing every problem."""
    errors: list[str] = []
    if not isinstance(doc, dict):
        raise ConfigError(["document must be a table of key = value pairs"])
    command = doc.get("command")
    if command not in COMMANDS:
        raise ConfigError(
            [f"command: must be one of {', '.join(COMMANDS)}, got {command!r}"]
        )
    schema = _SCHEMAS[command]
    params: dict = {}
    seen: set[str] = set()
    for key, value in doc.items():
        if key in ("command", "seed", "output"):
            continue
        rule = schema.get(key)
        if rule is None:
            errors.append(f"{key}: unknown key for command '{command}'")
            continue
        seen.add(key)
        got = _check_key(key, value, rule, errors)
        if got is not None:
            params[key] = got
    for key, rule in schema.items():
        if key in seen:
            continue
        if rule.required:
            errors.append(f"{key}: required for command '{command}'")
        elif rule.default is not None:
            params[key] = rule.default

    seed = doc.get("seed")
    if seed is None:
        if command in STOCHASTIC_COMMANDS:
            errors.append(f"seed: required for command '{command}'")
        seed = 0
    elif isinstance(seed, bool) or not isinstance(seed, int):
        errors.append(f"seed: expected an integer, got {seed!r}")
        seed = 0
    elif not 0 <= seed < (1 << 64):
        errors.append("seed: must fit in 64 bits")
        seed = 0

    output = doc.get("output", f"{command}.csv")
    if not isinstance(output, str) or not output:
        errors.append(f"output: expected a nonempty string, got {output!r}")
        output = f"{command}.csv"

    _conditional_checks(command, params, errors)
    if errors:
        raise ConfigError(errors)
    return ExperimentSpec(
        command=command, seed=seed, output_path=output, parameters=params
    )


def load_toml(path: str) -> dict:
    with open(path, "rb") as fh:
        return tomllib.load(fh)
