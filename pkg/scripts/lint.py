#!/usr/bin/env python3
"""Lint orbisymp with ruff; optionally run the fast test tier afterwards."""

from __future__ import annotations

import argparse
import subprocess
import sys
from pathlib import Path
from typing import List

REPO_ROOT = Path(__file__).resolve().parents[1]
TARGETS = ["orbisymp", "scripts", "tests"]


def _steps(args: argparse.Namespace) -> List[List[str]]:
    steps = [["ruff", "check", *TARGETS, *(["--fix"] if args.fix else [])]]
    if args.format:
        steps.append(["ruff", "format", *TARGETS, *([] if args.fix else ["--check"])])
    if args.tests:
        steps.append([sys.executable, "-m", "pytest", "-q", "-m", "not integration"])
    return steps


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fix", action="store_true", help="Apply ruff autofixes (and reformat with --format).")
    parser.add_argument("--format", action="store_true", help="Check formatting with ruff format.")
    parser.add_argument("--tests", action="store_true", help="Run pytest without the integration marker.")
    args = parser.parse_args()

    for cmd in _steps(args):
        print(f"$ {' '.join(cmd)}", flush=True)
        code = subprocess.run(cmd, cwd=REPO_ROOT, check=False).returncode
        if code != 0:
            raise SystemExit(code)


if __name__ == "__main__":
    main()
