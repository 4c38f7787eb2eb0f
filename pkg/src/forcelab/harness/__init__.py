"""Property-check harness: configuration, deterministic generators,
the property registry, serialization, fault injection, and the CLI."""

from .config import RunConfig, load_skeleton, parse_skeleton, validate_run_config
from .mutations import MUTATIONS, apply_mutation
from .registry import ALL_INVARIANTS, PROPERTIES, CaseReport, replay, run

__all__ = [
    "RunConfig",
    "load_skeleton",
    "parse_skeleton",
    "validate_run_config",
    "MUTATIONS",
    "apply_mutation",
    "ALL_INVARIANTS",
    "PROPERTIES",
    "CaseReport",
    "replay",
    "run",
]
