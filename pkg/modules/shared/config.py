"""
Configuration

Environment settings (loaded from .env by the workflow) and the JSON
pipeline configuration.
"""

import json
import os
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

from modules.exact.qsqrt2 import as_fraction, format_fraction
from modules.projective.interval import Interval, parse_interval
from modules.shared.errors import ConfigError


def env_flag(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


def env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or not value.strip():
        return default
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {value!r}") from None


def progress_enabled() -> bool:
    return env_flag("PARADOX_PROGRESS", True)


def default_jobs() -> int:
    return max(1, env_int("PARADOX_JOBS", 1))


def default_seed() -> int:
    return env_int("PARADOX_SEED", 7)


def log_dir() -> Path:
    return Path(os.getenv("PARADOX_LOG_DIR", "logs"))


def out_dir() -> Path:
    return Path(os.getenv("PARADOX_OUT_DIR", "artifacts"))


def pairs_file() -> Path:
    default = Path(__file__).resolve().parents[2] / "pairs" / "generator_pairs.json"
    return Path(os.getenv("PARADOX_PAIRS_FILE", str(default)))


BALL_GENERATORS = ("translating-set", "translating-set+thompson-f")


@dataclass
class CampaignPlan:
    """What the marriage campaign checks; all counts zero means construction only."""

    radius: int = 2
    exhaustive_max_size: int = 2
    random_samples: int = 10_000
    random_max_size: int = 8
    egs_pairs: int = 1_000
    seed: int = 7
    ball_generators: str = "translating-set"
    record_timing: bool = False

    def is_empty(self) -> bool:
        return not (self.exhaustive_max_size or self.random_samples or self.egs_pairs)

    @classmethod
    def empty(cls, seed: int = 7) -> "CampaignPlan":
        return cls(radius=0, exhaustive_max_size=0, random_samples=0, random_max_size=0,
                   egs_pairs=0, seed=seed)

    def validate(self) -> None:
        for name in ("radius", "exhaustive_max_size", "random_samples", "random_max_size", "egs_pairs"):
            if getattr(self, name) < 0:
                raise ConfigError(f"plan.{name} must be non-negative")
        if self.ball_generators not in BALL_GENERATORS:
            raise ConfigError(f"plan.ball_generators must be one of {BALL_GENERATORS}")

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class PipelineConfig:
    interval: Interval = field(default_factory=lambda: Interval.of(0, 1))
    epsilon: Fraction = Fraction(1, 48)
    pair: str = "dyadic-hyperbolic"
    max_core_len: int = 12
    plan: CampaignPlan = field(default_factory=CampaignPlan)
    jobs: int = 1

    def validate(self) -> None:
        if not 0 < self.epsilon < 1:
            raise ConfigError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not (self.interval.lo.is_rational() and self.interval.hi.is_rational()):
            raise ConfigError("interval endpoints must be rational")
        if self.max_core_len < 0:
            raise ConfigError("max_core_len must be non-negative")
        if self.jobs < 1:
            raise ConfigError("jobs must be at least 1")
        self.plan.validate()

    def to_json(self) -> Dict[str, Any]:
        return {
            "interval": [format_fraction(self.interval.lo.r), format_fraction(self.interval.hi.r)],
            "epsilon": format_fraction(self.epsilon),
            "pair": self.pair,
            "max_core_len": self.max_core_len,
            "plan": self.plan.to_json(),
            "jobs": self.jobs,
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "PipelineConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
        plan_data = data.get("plan", {})
        plan_known = {f.name for f in fields(CampaignPlan)}
        plan_unknown = sorted(set(plan_data) - plan_known)
        if plan_unknown:
            raise ConfigError(f"unknown plan key(s): {', '.join(plan_unknown)}")
        try:
            config = cls()
            if "interval" in data:
                lo, hi = data["interval"]
                config.interval = Interval.of(as_fraction(lo), as_fraction(hi))
            if "epsilon" in data:
                config.epsilon = as_fraction(data["epsilon"])
            config.pair = data.get("pair", config.pair)
            config.max_core_len = int(data.get("max_core_len", config.max_core_len))
            config.jobs = int(data.get("jobs", config.jobs))
            config.plan = CampaignPlan(**plan_data)
        except (TypeError, ValueError) as error:
            raise ConfigError(f"invalid config value: {error}") from None
        config.validate()
        return config


def load_config(path: Optional[str]) -> PipelineConfig:
    """Read a JSON config file; without a path the defaults apply."""
    if path is None:
        config = PipelineConfig()
        config.plan.seed = default_seed()
        config.jobs = default_jobs()
        config.validate()
        return config
    config_path = Path(path)
    try:
        with open(config_path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"Config file not found: {config_path}") from None
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid JSON in config file {config_path}: line {e.lineno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {config_path} must contain a JSON object")
    return PipelineConfig.from_json(data)


def apply_overrides(config: PipelineConfig, interval: Optional[str] = None,
                    epsilon: Optional[str] = None, pair: Optional[str] = None,
                    max_core_len: Optional[int] = None, seed: Optional[int] = None,
                    jobs: Optional[int] = None) -> PipelineConfig:
    """CLI flags win over file values."""
    try:
        if interval is not None:
            config.interval = parse_interval(interval)
        if epsilon is not None:
            config.epsilon = as_fraction(epsilon)
    except ValueError as error:
        raise ConfigError(str(error)) from None
    if pair is not None:
        config.pair = pair
    if max_core_len is not None:
        config.max_core_len = max_core_len
    if seed is not None:
        config.plan.seed = seed
    if jobs is not None:
        config.jobs = jobs
    config.validate()
    return config
