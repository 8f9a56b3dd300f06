"""Run configuration shared by the command line and the verification suites."""
from __future__ import annotations

import json
import os
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - exercised only on 3.10
    import tomli as tomllib

from .fqoracle import DEFAULT_BUDGET

DEFAULT_SEED = 20240607


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    n: int = 2
    D: Tuple[int, int] = (0, 6)
    window: Optional[int] = None
    primes: Tuple[int, ...] = (2, 3)
    budget: int = DEFAULT_BUDGET
    order: int = 20
    cache_dir: Optional[str] = None
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if isinstance(self.D, int):
            self.D = (self.D, self.D)
        self.D = tuple(int(x) for x in self.D)
        self.primes = tuple(int(q) for q in self.primes)
        self.validate()

    def validate(self) -> None:
        if self.n < 2:
            raise ConfigError("n must be at least 2")
        lo, hi = self.D
        if lo < 0 or hi < lo:
            raise ConfigError(f"bad D range {self.D}")
        if self.budget <= 0:
            raise ConfigError("budget must be positive")
        if self.window is not None and self.window < 1:
            raise ConfigError("window radius must be at least 1")
        bad = [q for q in self.primes if q not in (2, 3, 4, 5, 7)]
        if bad:
            raise ConfigError(f"unsupported field sizes {bad}; use 2, 3, 4, 5 or 7")
        if self.order < 0:
            raise ConfigError("series order must be nonnegative")

    def to_dict(self) -> Dict[str, Any]:
        d = asdict(self)
        d["D"] = list(self.D)
        d["primes"] = list(self.primes)
        return d


def load_config(path: Optional[str] = None, **overrides) -> Config:
    """Read a JSON or TOML file (by extension), then apply non-None overrides."""
    data: Dict[str, Any] = {}
    if path:
        p = Path(path)
        text = p.read_bytes()
        try:
            if p.suffix.lower() == ".toml":
                data = tomllib.loads(text.decode())
            else:
                data = json.loads(text)
        except (ValueError, tomllib.TOMLDecodeError) as exc:
            raise ConfigError(f"cannot parse {path}: {exc}") from exc
    known = {f.name for f in fields(Config)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    data.update({k: v for k, v in overrides.items() if v is not None})
    if data.get("cache_dir") is None and os.environ.get("QSCHUR_CACHE"):
        data["cache_dir"] = os.environ["QSCHUR_CACHE"]
    try:
        return Config(**data)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
