"""Work budgets for the exponential search kernels.

Every search takes an optional :class:`Budget`; when none is given a fresh one
is created with the default limit, which the ``INDMIN_BUDGET`` environment
variable overrides.
"""

from __future__ import annotations

import os
from typing import Optional

DEFAULT_LIMIT = 5_000_000
ENV_VAR = "INDMIN_BUDGET"


class BudgetExhausted(RuntimeError):
    """Raised when a search exceeds its work budget (distinct from 'no')."""


class Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: Optional[int] = None):
        if limit is None:
            limit = default_limit()
        self.limit = limit
        self.used = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise BudgetExhausted(f"work budget of {self.limit} steps exhausted")

    def __repr__(self):
        return f"Budget(used={self.used}, limit={self.limit})"


def default_limit() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    return DEFAULT_LIMIT


def ensure(budget: Optional[Budget]) -> Budget:
    return budget if budget is not None else Budget()
