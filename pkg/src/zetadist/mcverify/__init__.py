"""Verification suites, reports and the command line interface."""
from .config import ConfigError, VerificationConfig, load_config, parse_config_text
from .report import Check, Report
from .suites import (kummer_check, run_suite, suite_compatibility, suite_interpolation,
                     suite_irregular)

__all__ = ["ConfigError", "VerificationConfig", "load_config", "parse_config_text", "Check",
           "Report", "kummer_check", "run_suite", "suite_compatibility", "suite_interpolation",
           "suite_irregular"]
