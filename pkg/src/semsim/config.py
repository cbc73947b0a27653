"""Run configuration: a flat ``key = value`` file plus flag overrides.

Relative paths in a config file are resolved against the file's
directory.  ``SEMSIM_CONFIG`` names the default file.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .evaluation import DEFAULT_SWEEP, thresholds

PATH_KEYS = {"taxonomy", "wordnet_data", "wordnet_index", "ic_corpus", "ic_table",
             "lsa_corpus", "lsa_space", "output_dir", "stopwords"}
SCALAR_KEYS = {"wordnet_pos", "lsa_k", "lsa_weighting", "sweep_start", "sweep_end",
               "sweep_step", "seed"}


@dataclass
class LsaSource:
    corpus: Path | None = None
    space: Path | None = None


@dataclass
class RunConfig:
    taxonomy: Path | None = None
    wordnet_data: Path | None = None
    wordnet_index: Path | None = None
    wordnet_pos: str = "n"
    ic_corpus: Path | None = None
    ic_table: Path | None = None
    lsa: dict[str, LsaSource] = field(default_factory=dict)
    lsa_k: int | None = None
    lsa_weighting: str = "log_entropy"
    stopwords: Path | None = None
    sweep_start: float = DEFAULT_SWEEP[0]
    sweep_end: float = DEFAULT_SWEEP[1]
    sweep_step: float = DEFAULT_SWEEP[2]
    seed: int = 42
    output_dir: Path = Path("reports")

    @property
    def sweep(self):
        return {"start": self.sweep_start, "end": self.sweep_end, "step": self.sweep_step}

    def has_taxonomy(self):
        return self.taxonomy is not None or self.wordnet_data is not None

    def validate(self):
        if self.taxonomy is not None and self.wordnet_data is not None:
            raise ConfigError("configure either 'taxonomy' or 'wordnet_data', not both")
        if self.lsa_k is not None and self.lsa_k < 1:
            raise ConfigError(f"lsa_k must be >= 1, got {self.lsa_k}")
        try:
            thresholds(self.sweep_start, self.sweep_end, self.sweep_step)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return self


def parse_config_text(text: str, base: Path = Path("."), source="<config>") -> dict:
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key] = _resolve(key, value, base, f"{source}:{lineno}")
    return values


def _resolve(key, value, base, where):
    is_lsa = key.startswith("lsa.") and key.rsplit(".", 1)[-1] in ("corpus", "space") and key.count(".") == 2
    if key in PATH_KEYS or is_lsa:
        p = Path(value).expanduser()
        return p if p.is_absolute() else base / p
    if key in SCALAR_KEYS:
        return value
    raise ConfigError(f"{where}: unknown key {key!r}")


def load_config(path=None, overrides: dict | None = None) -> RunConfig:
    """Merge the config file (``path`` or ``$SEMSIM_CONFIG``) with overrides."""
    values: dict = {}
    if path is None:
        path = os.environ.get("SEMSIM_CONFIG") or None
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        values.update(parse_config_text(path.read_text(encoding="utf-8"), path.parent, str(path)))
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = Path(value) if key in PATH_KEYS and not isinstance(value, Path) else value
    return from_mapping(values).validate()


def from_mapping(values: dict) -> RunConfig:
    cfg = RunConfig()
    try:
        for key, value in values.items():
            if key.startswith("lsa."):
                _, space_id, what = key.split(".")
                setattr(cfg.lsa.setdefault(space_id, LsaSource()), what, Path(value))
            elif key in ("lsa_corpus", "lsa_space"):
                setattr(cfg.lsa.setdefault("default", LsaSource()), key[4:], Path(value))
            elif key == "lsa_k":
                cfg.lsa_k = int(value)
            elif key == "seed":
                cfg.seed = int(value)
            elif key.startswith("sweep_"):
                setattr(cfg, key, float(value))
            elif key in PATH_KEYS:
                setattr(cfg, key, Path(value))
            elif key in SCALAR_KEYS:
                setattr(cfg, key, str(value))
            else:
                raise ConfigError(f"unknown key {key!r}")
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {exc}") from None
    return cfg
