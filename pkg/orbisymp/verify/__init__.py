from .corpus import corpus_rep, corpus_splitting
from .models import Check, CheckContext, CheckResult, Report
from .runner import SUITES, UnknownSuite, resolve_suites, run_check, run_suites

__all__ = [
    "Check",
    "CheckContext",
    "CheckResult",
    "Report",
    "SUITES",
    "UnknownSuite",
    "corpus_rep",
    "corpus_splitting",
    "resolve_suites",
    "run_check",
    "run_suites",
]
