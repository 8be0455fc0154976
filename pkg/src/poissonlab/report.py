"""Run configuration and JSON-lines verification reports."""

from __future__ import annotations

import json
import os
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from .exact import ExactMatrix, fraction_str

SEED_ENV = "POISSONLAB_SEED"
FORMATS = ("ascii", "json", "svg")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    sample_budget: int = 20
    coefficient_bound: int = 10
    output_format: str = "ascii"
    report_path: str | None = None

    def __post_init__(self):
        if self.output_format not in FORMATS:
            raise ConfigError(f"unknown output format {self.output_format!r}")
        if self.sample_budget < 1 or self.coefficient_bound < 1:
            raise ConfigError("budget and bound must be positive")
        if not -2 ** 63 <= self.seed < 2 ** 64:
            raise ConfigError("seed must fit in 64 bits")

    def rng(self, label: str) -> random.Random:
        """Independent deterministic stream per label."""
        return random.Random(f"{self.seed}/{label}")

    def echo(self) -> dict:
        return {"seed": self.seed, "sample_budget": self.sample_budget,
                "coefficient_bound": self.coefficient_bound}


_KEYS = {"seed": ("seed", int), "budget": ("sample_budget", int),
         "sample_budget": ("sample_budget", int), "bound": ("coefficient_bound", int),
         "coefficient_bound": ("coefficient_bound", int), "format": ("output_format", str),
         "output_format": ("output_format", str), "report": ("report_path", str),
         "report_path": ("report_path", str)}


def parse_config_text(text: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        name, conv = _KEYS[key]
        try:
            out[name] = conv(value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key}") from exc
    return out


def build_config(config_file: str | None = None, env: dict | None = None, **overrides) -> RunConfig:
    """Defaults < seed environment variable < config file < explicit overrides (None ignored)."""
    env = os.environ if env is None else env
    values: dict = {}
    if env.get(SEED_ENV):
        try:
            values["seed"] = int(env[SEED_ENV])
        except ValueError as exc:
            raise ConfigError(f"{SEED_ENV} must be an integer") from exc
    if config_file:
        values.update(parse_config_text(Path(config_file).read_text()))
    values.update({k: v for k, v in overrides.items() if v is not None})
    return RunConfig(**values)


def to_jsonable(obj):
    """Fractions become "p/q" strings, matrices nested string lists."""
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, ExactMatrix):
        return obj.to_strings()
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    return obj


@dataclass
class CheckRecord:
    claim: str
    statement: str
    verdict: bool
    witness: dict = field(default_factory=dict)


@dataclass
class VerificationReport:
    command: list
    config: RunConfig
    records: list = field(default_factory=list)

    def add(self, claim: str, statement: str, verdict: bool, **witness) -> CheckRecord:
        rec = CheckRecord(claim, statement, bool(verdict), witness)
        self.records.append(rec)
        return rec

    @property
    def passed(self) -> bool:
        return all(r.verdict for r in self.records)

    def to_json(self) -> dict:
        records = sorted(self.records, key=lambda r: r.claim)
        return {"command": list(self.command), "config": self.config.echo(),
                "records": [to_jsonable(asdict(r)) for r in records],
                "status": "pass" if self.passed else "fail"}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    def append_to(self, path: str) -> None:
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(self.dumps() + "\n")

    def summary(self) -> str:
        lines = [f"{'PASS' if r.verdict else 'FAIL'}  {r.claim}: {r.statement}"
                 for r in sorted(self.records, key=lambda r: r.claim)]
        lines.append(f"status: {'pass' if self.passed else 'fail'}")
        return "\n".join(lines)
