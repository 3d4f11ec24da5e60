"""Run settings: built-in defaults, an optional dotenv file, then command-line flags."""
from dataclasses import dataclass, fields
from pathlib import Path

import toolz
from dotenv import dotenv_values

from ._errors import ValidationError


@dataclass(frozen=True)
class Settings:
    seed: int = 0
    max_steps: int = 64
    term_cap: int = 200_000
    k_max: int = 16
    p_max: int = 32
    jet_order: int = 6
    degree_terms: int = 24
    workers: int = 4


DEFAULTS = {f.name: f.default for f in fields(Settings)}

MINIMA = {"seed": 0, "max_steps": 1, "term_cap": 1, "k_max": 1, "p_max": 0, "jet_order": 2, "degree_terms": 4,
          "workers": 1}


def read_config(path):
    """
    Settings from a dotenv-format file such as::

        SEED=3
        MAX_STEPS=128

    Keys are the upper-case setting names; ``os.environ`` is left alone.

    Raises
    ------
    ValidationError
        For unknown keys and values that are not integers.
    """
    if not Path(path).is_file():
        raise ValidationError("no such config file", str(path))
    values = {}
    for key, raw in dotenv_values(path).items():
        name = key.lower()
        if name not in DEFAULTS:
            raise ValidationError(f"unknown setting {key}", str(path))
        try:
            values[name] = int(raw)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"{key} must be an integer, got {raw!r}", str(path)) from exc
    return values


def load_settings(path=None, **overrides):
    """Merge defaults, the config file at ``path`` and the non-None ``overrides``."""
    from_file = read_config(path) if path else {}
    given = toolz.valfilter(lambda v: v is not None, overrides)
    unknown = set(given) - set(DEFAULTS)
    if unknown:
        raise ValidationError(f"unknown setting(s) {', '.join(sorted(unknown))}")
    merged = toolz.merge(DEFAULTS, from_file, given)
    for name, value in merged.items():
        if value < MINIMA[name]:
            raise ValidationError(f"{name} must be at least {MINIMA[name]}, got {value}", name)
    return Settings(**merged)
