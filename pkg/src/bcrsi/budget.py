"""Enumeration budget shared by the exact evaluators.

Exactness is the contract: evaluators refuse rather than subsample when
the joint outcome count exceeds the budget.  BCRSI_BUDGET overrides the
default cap of 2**26 outcomes.
"""

from __future__ import annotations

import os

DEFAULT_BUDGET = 1 << 26


class BudgetExceeded(RuntimeError):
    pass


def enumeration_budget() -> int:
    raw = os.environ.get("BCRSI_BUDGET", "").strip()
    if raw:
        value = int(raw)
        if value <= 0:
            raise ValueError("BCRSI_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET


def check_budget(outcomes: int, what: str) -> None:
    cap = enumeration_budget()
    if outcomes > cap:
        raise BudgetExceeded(
            f"{what} needs {outcomes} joint outcomes, over the cap of {cap}; "
            "set BCRSI_BUDGET to raise it")
