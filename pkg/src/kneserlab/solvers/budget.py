from __future__ import annotations

import os
import threading
import time


class BudgetExceeded(RuntimeError):
    """A solver ran out of nodes or time.  Carries the best bounds it had."""

    def __init__(self, message: str, lower: int | None = None, upper: int | None = None, nodes: int = 0):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.nodes = nodes

    def with_bounds(self, lower, upper) -> "BudgetExceeded":
        self.lower = lower
        self.upper = upper
        return self


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return None
    return int(raw)


class Budget:
    """Node and wall-clock allowance shared by one solver call and its subcalls.

    ``None`` means unlimited.  ``cancel`` is an optional ``threading.Event``
    checked at every node so a caller can stop a running search.
    """

    CHECK_EVERY = 256

    def __init__(self, nodes: int | None = None, ms: int | None = None, cancel: threading.Event | None = None):
        self.node_limit = nodes
        self.ms_limit = ms
        self.cancel = cancel
        self.nodes = 0
        self._deadline = None if ms is None else time.monotonic() + ms / 1000.0

    @classmethod
    def from_env(cls, nodes: int | None = None, ms: int | None = None) -> "Budget":
        if nodes is None:
            nodes = _env_int("KNESERLAB_NODE_BUDGET")
        if ms is None:
            ms = _env_int("KNESERLAB_TIME_BUDGET_MS")
        return cls(nodes, ms)

    def tick(self, count: int = 1) -> None:
        self.nodes += count
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise BudgetExceeded(f"node budget of {self.node_limit} exhausted", nodes=self.nodes)
        if self.nodes % self.CHECK_EVERY < count:
            if self._deadline is not None and time.monotonic() > self._deadline:
                raise BudgetExceeded(f"time budget of {self.ms_limit} ms exhausted", nodes=self.nodes)
            if self.cancel is not None and self.cancel.is_set():
                raise BudgetExceeded("cancelled", nodes=self.nodes)


def resolve(budget: Budget | None) -> Budget:
    return Budget.from_env() if budget is None else budget
