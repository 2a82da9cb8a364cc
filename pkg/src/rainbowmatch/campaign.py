"""Seeded benchmark campaigns over random instances, written as CSV.

Campaign JSON::

    {"suite": "dense4n", "timeout": 60,
     "grid": [{"n": [20, 30, 50], "kernel_per_n": 4, "delta": "1",
               "method": "greedy_switch", "seeds": 100, "overlap": 1.0}]}

``n``, ``kernel`` and ``method`` may be scalars or lists (expanded as a
product in that order); ``kernel_per_n`` sets kernel = ceil(k * n) instead of
``kernel``; ``seeds`` is a count (seeds 0..count-1) or an explicit list.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import as_fraction, is_rainbow_matching
from .errors import ParameterError
from .generators import RandomSpec, random_instance
from .solvers.outcome import SolveOutcome, SolverParams
from .solvers.pipeline import solve
from .solvers.proof_guided import identity_violations

COLUMNS = ["n", "kernel", "delta", "method", "seed", "status", "matching_size", "nodes", "depth", "millis",
           "success_fraction"]


@dataclass(frozen=True)
class Cell:
    n: int
    kernel: int
    delta: Fraction
    method: str
    seeds: tuple
    overlap: float = 1.0
    clique_size_weights: tuple = ((2, 1), (3, 1), (4, 1))
    max_switch_len: int = 4
    node_budget: int = 1_000_000


@dataclass
class CampaignSpec:
    suite: str
    grid: list
    timeout: float = 60.0
    output: Optional[str] = None

    def __post_init__(self):
        if not self.grid:
            raise ParameterError("campaign grid is empty")
        if not self.timeout > 0:
            raise ParameterError("timeout must be positive")


def _as_list(x):
    return list(x) if isinstance(x, (list, tuple)) else [x]


def parse_campaign(obj) -> CampaignSpec:
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    cells = []
    for entry in obj.get("grid", []):
        seeds = entry.get("seeds", 1)
        seeds = tuple(range(seeds)) if isinstance(seeds, int) else tuple(seeds)
        weights = entry.get("clique_size_weights", {"2": 1, "3": 1, "4": 1})
        weights = tuple(sorted((int(k), float(v)) for k, v in weights.items()))
        for n in _as_list(entry["n"]):
            if "kernel_per_n" in entry:
                kernels = [math.ceil(as_fraction(entry["kernel_per_n"]) * n)]
            else:
                kernels = _as_list(entry["kernel"])
            for kernel in kernels:
                for method in _as_list(entry.get("method", "greedy_switch")):
                    cells.append(Cell(int(n), int(kernel), as_fraction(entry.get("delta", 1)), method, seeds,
                                      float(entry.get("overlap", 1.0)), weights,
                                      int(entry.get("max_switch_len", 4)), int(entry.get("node_budget", 1_000_000))))
    return CampaignSpec(obj.get("suite", "campaign"), cells, float(obj.get("timeout", 60.0)), obj.get("output"))


@dataclass
class Run:
    cell: Cell
    seed: int
    status: str
    outcome: SolveOutcome
    identity_problems: list = field(default_factory=list)

    def row(self):
        s = self.outcome.stats
        return {"n": self.cell.n, "kernel": self.cell.kernel, "delta": str(self.cell.delta),
                "method": self.cell.method, "seed": self.seed, "status": self.status,
                "matching_size": self.outcome.size, "nodes": s.nodes, "depth": s.depth,
                "millis": f"{s.wall_ms:.1f}", "success_fraction": ""}


def run_one(task) -> Run:
    cell, seed, timeout = task
    inst = random_instance(RandomSpec(cell.n, cell.kernel, dict(cell.clique_size_weights), cell.overlap, seed=seed))
    params = SolverParams(cell.delta, cell.max_switch_len, cell.node_budget, seed, cell.method, timeout)
    out = solve(inst, params)
    status = out.status
    if out.found and not is_rainbow_matching(inst, out.matching, cell.n):
        status = "verify-failed"
    problems = []
    for t in out.traces:
        for lv in t.levels:
            if not lv.fallback:
                problems.extend(identity_violations(lv))
    return Run(cell, seed, status, out, problems)


@dataclass
class CampaignResult:
    spec: CampaignSpec
    runs: list

    def summaries(self):
        groups: dict = {}
        for r in self.runs:
            groups.setdefault((r.cell.n, r.cell.kernel, r.cell.method), []).append(r)
        out = []
        for (n, kernel, method), runs in groups.items():
            ok = sum(1 for r in runs if r.status == "found")
            out.append({"n": n, "kernel": kernel, "delta": "", "method": method, "seed": "", "status": "summary",
                        "matching_size": "", "nodes": sum(r.outcome.stats.nodes for r in runs), "depth": "",
                        "millis": f"{sum(r.outcome.stats.wall_ms for r in runs):.1f}",
                        "success_fraction": f"{ok / len(runs):.4f}"})
        return out

    def success_fraction(self, n=None, kernel=None, method=None) -> float:
        runs = [r for r in self.runs if (n is None or r.cell.n == n) and (kernel is None or r.cell.kernel == kernel)
                and (method is None or r.cell.method == method)]
        return sum(r.status == "found" for r in runs) / len(runs)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in self.runs:
            w.writerow(r.row())
        for row in self.summaries():
            w.writerow(row)
        return buf.getvalue()


def run_campaign(spec: CampaignSpec, workers: int = 1) -> CampaignResult:
    tasks = [(cell, seed, spec.timeout) for cell in spec.grid for seed in cell.seeds]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            runs = list(pool.map(run_one, tasks, chunksize=4))
    else:
        runs = [run_one(t) for t in tasks]
    return CampaignResult(spec, runs)
