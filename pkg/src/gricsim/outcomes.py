"""Shared trial-outcome records and routing signals.

Kept separate so both the routing engines and the experiment harness can
import them without a cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .geometry import Vec2


class Stuck(Exception):
    """Raised when a router has no admissible next hop."""


class TrialStatus(Enum):
    SUCCESS = "success"
    FAIL_TTL = "fail_ttl"
    FAIL_OOB = "fail_oob"
    FAIL_STUCK = "fail_stuck"
    FAIL_NO_NODES = "fail_no_nodes"


@dataclass
class TrialOutcome:
    """Result of routing one message through one world.

    hops counts every move of the message, backtracking moves included.
    distance is the total Euclidean length travelled. path holds the
    sequence of visited node positions when path recording was requested,
    else None.
    """

    status: TrialStatus
    hops: int
    distance: float
    path: list[Vec2] | None = field(default=None)

    @property
    def succeeded(self) -> bool:
        return self.status is TrialStatus.SUCCESS
