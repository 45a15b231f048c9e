"""Mechanical verification of the algebra's identities, filtrations and ranks."""

from . import checks  # noqa: F401  (registers the checks)
from .registry import REGISTRY, BadParams, CheckResult, UnknownCheck, check_names, run_check
from .suite import Report, run_suite, suite_jobs

__all__ = [
    "REGISTRY", "BadParams", "CheckResult", "UnknownCheck", "check_names", "run_check",
    "Report", "run_suite", "suite_jobs",
]
