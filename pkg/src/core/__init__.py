"""
Core module for the cascade-invariants package

This module provides a simplified import interface for the plumbing shared by
the library and the command-line program.

Usage:
    from core import *
"""

# Report Models
from .data import CheckResult, Provenance, RunReport

# Errors
from .errors import (
    CascadeInvariantsError,
    DegenerateSampleError,
    GuardExceededError,
    InadmissibleTypeError,
    OracleScopeError,
    PoleError,
    VerificationError,
)

# Logging Configuration
from .logging_config import setup_logging, get_logger

# CLI Argument Parsing
from .cli import parse_args, parse_algebra_label, config_overrides

# Define what gets exported when using "from core import *"
__all__ = [
    # Report Models
    'CheckResult',
    'Provenance',
    'RunReport',

    # Errors
    'CascadeInvariantsError',
    'DegenerateSampleError',
    'GuardExceededError',
    'InadmissibleTypeError',
    'OracleScopeError',
    'PoleError',
    'VerificationError',

    # Logging
    'setup_logging',
    'get_logger',

    # CLI
    'parse_args',
    'parse_algebra_label',
    'config_overrides',
]
