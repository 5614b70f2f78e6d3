from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from orbisymp.errors import OrbisympError
from orbisymp.utils.logging import get_logger, log_context
from orbisymp.utils.settings import get_settings

from .checks import ALL_CHECKS
from .models import Check, CheckContext, CheckResult, Report

LOGGER = get_logger(__name__)

SUITES = ("fox", "dims", "pairing", "decomposition", "flows")


class UnknownSuite(ValueError):
    pass


def resolve_suites(name: str) -> List[str]:
    if name == "all":
        return list(SUITES)
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; expected one of {', '.join(SUITES + ('all',))}")
    return [name]


def check_seed(run_seed: int, index: int) -> int:
    """Seed of the check at registry position ``index``; independent of scheduling."""

    return int(np.random.SeedSequence([run_seed, index]).generate_state(1)[0])


def run_check(check: Check, seed: int, samples: Optional[int] = None, timing: bool = True) -> CheckResult:
    started = time.perf_counter()
    status = "fail"
    error: Optional[float] = None
    detail: Optional[str] = None
    try:
        with log_context(check=check.name, suite=check.suite, seed=seed):
            error = check.run(CheckContext(seed=seed, samples=samples))
        if error is None:
            status = "skip"
        elif error <= check.tolerance:
            status = "pass"
    except (OrbisympError, ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
        detail = f"{type(exc).__name__}: {exc}"
        LOGGER.error("Check raised", extra={"check": check.name, "error": detail})
    runtime_ms = (time.perf_counter() - started) * 1000.0 if timing else 0.0
    result = CheckResult(
        name=check.name,
        suite=check.suite,
        status=status,
        max_error=error,
        tolerance=check.tolerance,
        seed=seed,
        runtime_ms=round(runtime_ms, 3),
        detail=detail,
    )
    LOGGER.info(
        "Check finished",
        extra={"check": check.name, "status": status, "max_error": error, "tolerance": check.tolerance},
    )
    return result


def run_suites(
    suites: Sequence[str],
    seed: int = 0,
    samples: Optional[int] = None,
    threads: Optional[int] = None,
    timing: bool = True,
) -> Report:
    """Run every registered check of ``suites``; results keep registry order."""

    selected = [(index, check) for index, check in enumerate(ALL_CHECKS) if check.suite in suites]
    workers = max(1, min(threads or get_settings().threads, len(selected) or 1))

    def execute(item) -> CheckResult:
        index, check = item
        return run_check(check, check_seed(seed, index), samples, timing)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(execute, selected))
    report = Report(seed=seed, samples=samples, suites=list(suites), checks=results)
    LOGGER.info("Verification finished", extra={"suites": list(suites), **report.counts()})
    return report
