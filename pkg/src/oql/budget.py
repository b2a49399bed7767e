"""Candidate budgets for the exhaustive enumerations."""

from __future__ import annotations

import os

from .errors import SizeBound

DEFAULT_BUDGET = 10**6


def default_budget() -> int:
    env = os.environ.get("OQL_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_BUDGET


class Budget:
    """Counts search nodes visited by an enumeration.

    One budget may be threaded through several nested enumerations so
    that a whole command shares a single cap.
    """

    def __init__(self, limit: int | None = None):
        self.limit = default_budget() if limit is None else int(limit)
        self.used = 0

    def spend(self, n: int = 1, what: str = "candidates") -> None:
        self.used += n
        if self.used > self.limit:
            raise SizeBound(what, self.limit)

    def check(self, n: int, what: str) -> None:
        """Fail up front if a known-size enumeration would not fit."""
        if self.used + n > self.limit:
            raise SizeBound(what, self.limit)


def as_budget(budget: Budget | int | None) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)
