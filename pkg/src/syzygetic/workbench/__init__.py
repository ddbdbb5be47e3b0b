"""Experiment configuration, task dispatch, reports and the command line."""

from .config import ConfigError, ExperimentConfig, TASKS, load_config, parse_config
from .report import RunReport, SCHEMA_VERSION, canonical_json, derive_seed, emit_report
from .tasks import run

__all__ = [
    "ConfigError", "ExperimentConfig", "TASKS", "load_config", "parse_config",
    "RunReport", "SCHEMA_VERSION", "canonical_json", "derive_seed", "emit_report", "run",
]
