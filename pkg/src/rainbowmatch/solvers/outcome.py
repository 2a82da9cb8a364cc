from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..core import Matching, as_fraction
from ..errors import ParameterError
from ..formats import matching_to_obj

METHODS = ("exact", "greedy_switch", "proof_guided")

FOUND = "found"
ABSENT = "exhaustive-proof-of-absence"
BUDGET = "budget-exhausted"


@dataclass(frozen=True)
class SolverParams:
    delta: Fraction = Fraction(1)
    max_switch_len: int = 4
    node_budget: int = 1_000_000
    seed: int = 0
    method: str = "greedy_switch"
    time_limit: Optional[float] = None
    restarts: int = 32

    def __post_init__(self):
        object.__setattr__(self, "delta", as_fraction(self.delta))
        if self.delta <= 0:
            raise ParameterError("delta must be positive")
        if self.max_switch_len < 0:
            raise ParameterError("max_switch_len must be non-negative")
        if self.restarts < 0:
            raise ParameterError("restarts must be non-negative")
        if self.node_budget < 1:
            raise ParameterError("node_budget must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ParameterError("seed must be a 64-bit unsigned integer")
        if self.method not in METHODS:
            raise ParameterError(f"unknown method {self.method!r}; expected one of {', '.join(METHODS)}")

    @property
    def n0(self) -> int:
        return math.ceil(144 / self.delta**2)


@dataclass
class Stats:
    nodes: int = 0
    switchings: int = 0
    depth: int = 0
    recursion_depth: int = 0
    wall_ms: float = 0.0

    def to_obj(self, timing=False):
        out = {"nodes": self.nodes, "switchings": self.switchings, "depth": self.depth,
               "recursion_depth": self.recursion_depth}
        if timing:
            out["wall_ms"] = round(self.wall_ms, 3)
        return out


@dataclass
class SolveOutcome:
    certificate: str
    matching: Optional[Matching] = None
    size: int = 0
    stats: Stats = field(default_factory=Stats)
    timed_out: bool = False
    traces: list = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.certificate == FOUND

    @property
    def status(self) -> str:
        if self.found:
            return "found"
        return "timeout" if self.timed_out else "not-found"

    def to_obj(self, timing=False):
        out = {"status": self.status}
        if self.matching is not None:
            out["matching"] = matching_to_obj(self.matching)
        out["certificate"] = self.certificate
        out["size"] = self.size
        out["stats"] = self.stats.to_obj(timing)
        return out
