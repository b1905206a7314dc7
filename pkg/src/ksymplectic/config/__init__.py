"""
Configuration Module

Handles configuration management including:
- Toolkit constants (symbol kinds, verdicts, tolerances)
- Settings management with YAML support
- Logging setup from the configuration
"""

from .constants import (
    FUNCTION_NAMES,
    Equality,
    Grade,
    Regularity,
    Scheme,
    SolutionKind,
    VarKind,
)
from .settings import (
    Config,
    SamplingPlan,
    configure_logging,
    get_global_config,
    load_config,
    set_global_config,
)

__all__ = [
    # constants
    "VarKind",
    "Grade",
    "Equality",
    "Regularity",
    "SolutionKind",
    "Scheme",
    "FUNCTION_NAMES",
    # settings
    "Config",
    "SamplingPlan",
    "load_config",
    "configure_logging",
    "get_global_config",
    "set_global_config",
]
