"""Experiment runners, reports and the command-line interface."""

from .experiments import (exp_liouville, exp_mahler_rational, exp_theorem1, exp_theorem2,
                          mahler_violations, quad_as_algebraic, scan_main_theorem)
from .report import (CONSISTENT, EXIT_CODES, FORMATS, INCONCLUSIVE, INCONSISTENT,
                     ExperimentReport, UsageError, emit, report_emit)

__all__ = [
    "CONSISTENT", "EXIT_CODES", "FORMATS", "INCONCLUSIVE", "INCONSISTENT",
    "ExperimentReport", "UsageError", "emit", "exp_liouville", "exp_mahler_rational",
    "exp_theorem1", "exp_theorem2", "mahler_violations", "quad_as_algebraic", "report_emit",
    "scan_main_theorem",
]
