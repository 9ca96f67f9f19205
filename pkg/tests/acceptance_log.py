"""Shared record of acceptance verdicts, printed in the pytest summary."""

import functools
import time

LINES: list = []


def criterion(number: int, title: str, budget: float):
    """Time the wrapped test, enforce its runtime budget and log one line."""
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            note = ""
            try:
                note = fn(*args, **kwargs) or ""
                elapsed = time.perf_counter() - start
                assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
            except BaseException as exc:
                elapsed = time.perf_counter() - start
                _log(f"criterion {number}: FAIL  {title} ({elapsed:.2f}s) {type(exc).__name__}: {exc}")
                raise
            _log(f"criterion {number}: PASS  {title} ({elapsed:.2f}s){' ' + note if note else ''}")
        return run
    return wrap


def _log(line):
    LINES.append(line)
    print(line)
