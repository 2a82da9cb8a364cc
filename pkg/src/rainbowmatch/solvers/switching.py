"""Greedy initialization and bounded switching augmentation."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from ..core import Edge, Instance, Matching, Switching
from ..errors import InvalidMissingColourError
from ._graph import BudgetExhausted, CliqueGraph, Counter, matching_vertices
from .outcome import SolverParams, Stats


def greedy_matching(instance: Instance, seed: int = 0) -> Matching:
    """Colours in seeded random order; each takes its first edge avoiding earlier picks."""
    order = list(range(instance.n))
    random.Random(seed).shuffle(order)
    g = CliqueGraph.from_instance(instance)
    used: set = set()
    out = []
    for c in order:
        e = g.find_edge(c, used)
        if e is not None:
            out.append(e)
            used.update(e.ends)
    return Matching(tuple(sorted(out)))


def randomized_greedy(g: CliqueGraph, rng: random.Random, first=()) -> dict:
    """Greedy restart: colours in ``first`` go first, every edge is drawn uniformly from the free ones."""
    head = list(first)
    rng.shuffle(head)
    tail = [c for c in g.colours if c not in set(head)]
    rng.shuffle(tail)
    used: set = set()
    M = {}
    for c in head + tail:
        free = [f for f in ([x for x in k if x not in used] for k in g.cliques[c]) if len(f) >= 2]
        if free:
            f = rng.choice(free)
            u, v = sorted(rng.sample(f, 2))
            M[c] = Edge(c, u, v)
            used.update((u, v))
    return M


def augment_graph(g: CliqueGraph, M: dict, c0: int, max_len: int, counter: Counter):
    """Iterative deepening over (c0, .)-switchings with a closing edge.

    Returns (new matching dict, switching, closing edge) or None once every
    switching up to ``max_len`` has been tried.  Raises BudgetExhausted.
    """
    vm = matching_vertices(M)
    outside = g.vertices - vm.keys()
    # colour -> [(matched vertices in the clique, outside vertices in the clique)]
    hooks = {}
    for c in g.colours:
        lst = []
        for k in g.cliques[c]:
            ws = [w for w in k if w in vm and vm[w] != c0]
            rs = [r for r in k if r in outside]
            if ws and rs:
                lst.append((ws, rs))
        hooks[c] = lst

    def close(colour, removed, outs):
        counter.switchings += 1
        blocked = set(x for x, col in vm.items() if col not in removed)
        for e in outs:
            blocked.update(e.ends)
        return g.find_edge(colour, blocked)

    for L in range(max_len + 1):
        seen = set()
        stack_colours: list = []
        stack_outs: list = []

        def dfs(colour):
            counter.tick()
            depth = len(stack_outs)
            if depth == L:
                e = close(colour, set(stack_colours), stack_outs)
                return e
            key = (frozenset(stack_colours), colour, frozenset(x for e in stack_outs for x in e.ends))
            if key in seen:
                return None
            seen.add(key)
            used_out = {x for e in stack_outs for x in e.ends}
            removed = set(stack_colours)
            for ws, rs in hooks[colour]:
                for w in ws:
                    cw = vm[w]
                    if cw in removed:
                        continue
                    for r in rs:
                        if r in used_out:
                            continue
                        stack_colours.append(cw)
                        stack_outs.append(Edge.of(colour, w, r))
                        got = dfs(cw)
                        if got is not None:
                            return got
                        stack_colours.pop()
                        stack_outs.pop()
            return None

        closing = dfs(c0)
        if closing is not None:
            counter.depth = max(counter.depth, L)
            sw = Switching(c0, tuple(stack_outs), tuple(M[c] for c in stack_colours))
            out = {c: e for c, e in M.items() if c not in set(stack_colours)}
            for e in stack_outs:
                out[e.colour] = e
            out[closing.colour] = closing
            return out, sw, closing
    return None


@dataclass
class Augmentation:
    matching: Optional[Matching]
    switching: Optional[Switching] = None
    closing: Optional[Edge] = None
    stats: Stats = field(default_factory=Stats)
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.matching is not None


def switching_augment(instance: Instance, m: Matching, missing: int, params: SolverParams,
                      counter: Optional[Counter] = None) -> Augmentation:
    instance.check_colour(missing)
    if missing in m.colours():
        raise InvalidMissingColourError(f"colour {missing} is present in the matching")
    if counter is None:
        counter = Counter(params.node_budget, params.time_limit)
    M = m.by_colour()
    g = CliqueGraph.from_instance(instance, sorted(set(M) | {missing}))
    stats = lambda: Stats(counter.nodes, counter.switchings, counter.depth)  # noqa: E731
    try:
        got = augment_graph(g, M, missing, params.max_switch_len, counter)
    except BudgetExhausted as exc:
        return Augmentation(None, stats=stats(), reason=exc.reason)
    if got is None:
        return Augmentation(None, stats=stats(), reason=f"no augmenting switching up to length {params.max_switch_len}")
    out, sw, closing = got
    return Augmentation(Matching(tuple(sorted(out.values()))), sw, closing, stats())
