"""Python access to the closed-loop simulation core and its CSV schema."""

from ._core import (
    ConfigError,
    columns,
    describe_scenario,
    run,
    scenario_keys,
    selftest,
    siso_columns,
    siso_demo,
)
from .schema import SchemaError, read_csv

__all__ = [
    "ConfigError",
    "SchemaError",
    "columns",
    "describe_scenario",
    "read_csv",
    "run",
    "scenario_keys",
    "selftest",
    "siso_columns",
    "siso_demo",
]
