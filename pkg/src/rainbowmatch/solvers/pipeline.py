from __future__ import annotations

import random
import time
from typing import Optional

from ..core import Instance, Matching, validate_instance
from ..errors import ValidationError
from ._graph import BudgetExhausted, CliqueGraph, Counter
from .exact import solve_exact
from .outcome import BUDGET, FOUND, SolveOutcome, SolverParams, Stats
from .proof_guided import ProofTrace, guided_augment_graph
from .switching import augment_graph, greedy_matching, randomized_greedy


def solve(instance: Instance, params: SolverParams, size: Optional[int] = None) -> SolveOutcome:
    """Find a rainbow matching of ``size`` (default n) with the configured method.

    Heuristic methods start from a seeded greedy matching and repeatedly grow
    it: with M the current matching and c0 a missing colour, the search is
    restricted to the colours of M plus c0 and M is augmented by one edge.
    When no missing colour can be added, the attempt restarts from a
    randomized greedy matching that places the stuck colours first, up to
    ``params.restarts`` times.
    """
    if params.method == "exact":
        return solve_exact(instance, size, params.node_budget, params.time_limit)
    report = validate_instance(instance)
    if not report.valid:
        raise ValidationError(report.violations)
    start = time.perf_counter()
    target = instance.n if size is None else size
    counter = Counter(params.node_budget, params.time_limit)
    traces: list[ProofTrace] = []
    g_full = CliqueGraph.from_instance(instance)
    rng = random.Random(params.seed)
    M = greedy_matching(instance, params.seed).by_colour()
    best = M
    timed_out = False
    try:
        for attempt in range(params.restarts + 1):
            if attempt:
                M = randomized_greedy(g_full, rng, stuck)
            M = _grow(g_full, M, target, params, counter, traces)
            if len(M) > len(best):
                best = M
            if len(M) >= target:
                break
            stuck = [c for c in range(instance.n) if c not in M]
    except BudgetExhausted as exc:
        timed_out = exc.reason == "time limit reached"
    depth = max((t.stats.recursion_depth for t in traces), default=0)
    stats = Stats(counter.nodes, counter.switchings, counter.depth, depth, (time.perf_counter() - start) * 1000)
    if len(best) >= target:
        edges = sorted(best.values())[:target]
        return SolveOutcome(FOUND, Matching(tuple(edges)), target, stats, traces=traces)
    return SolveOutcome(BUDGET, None, 0, stats, timed_out=timed_out, traces=traces)


def _grow(g_full, M, target, params, counter, traces):
    while len(M) < target:
        grown = None
        for c0 in (c for c in g_full.colours if c not in M):
            g = g_full.restrict(sorted(set(M) | {c0}), ())
            if params.method == "proof_guided":
                trace = ProofTrace()
                traces.append(trace)
                grown = guided_augment_graph(g, M, c0, params.delta, params.max_switch_len, counter, trace)
                trace.stats.nodes, trace.stats.switchings = counter.nodes, counter.switchings
            else:
                got = augment_graph(g, M, c0, params.max_switch_len, counter)
                grown = None if got is None else got[0]
            if grown is not None:
                break
        if grown is None:
            return M
        M = grown
    return M
