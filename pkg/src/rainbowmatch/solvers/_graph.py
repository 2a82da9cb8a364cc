from __future__ import annotations

import time

from ..core import Edge, Instance


class BudgetExhausted(Exception):
    def __init__(self, reason="node budget exhausted"):
        super().__init__(reason)
        self.reason = reason


class Counter:
    """Shared search statistics with a node budget and optional wall-clock deadline."""

    def __init__(self, budget=None, time_limit=None):
        self.budget = budget
        self.deadline = None if time_limit is None else time.monotonic() + time_limit
        self.nodes = 0
        self.switchings = 0
        self.depth = 0

    def tick(self):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExhausted()
        if self.deadline is not None and (self.nodes & 255) == 0 and time.monotonic() > self.deadline:
            raise BudgetExhausted("time limit reached")


class CliqueGraph:
    """Colour id -> cliques, restricted to an active colour set and vertex set.

    Colour ids keep their original values so matchings found on a restricted
    view are valid in the full instance.
    """

    __slots__ = ("cliques", "where", "colours", "vertices")

    def __init__(self, cliques):
        self.cliques = cliques
        self.where = {c: {x: i for i, k in enumerate(ks) for x in k} for c, ks in cliques.items()}
        self.colours = sorted(cliques)
        self.vertices = frozenset(x for ks in cliques.values() for k in ks for x in k)

    @classmethod
    def from_instance(cls, instance: Instance, colours=None):
        if colours is None:
            colours = range(instance.n)
        return cls({c: instance.classes[c] for c in colours})

    def restrict(self, colours, removed):
        out = {}
        for c in colours:
            ks = []
            for k in self.cliques[c]:
                kk = tuple(x for x in k if x not in removed)
                if len(kk) >= 2:
                    ks.append(kk)
            out[c] = tuple(ks)
        return CliqueGraph(out)

    def clique(self, c, x):
        i = self.where[c].get(x)
        return None if i is None else self.cliques[c][i]

    def find_edge(self, c, blocked):
        """First edge of colour c avoiding ``blocked`` (canonical order), or None."""
        for k in self.cliques[c]:
            first = None
            for x in k:
                if x not in blocked:
                    if first is None:
                        first = x
                    else:
                        return Edge(c, first, x)
        return None

    def edges_within(self, c, allowed):
        """First edge of colour c with both ends in ``allowed``, or None."""
        for k in self.cliques[c]:
            first = None
            for x in k:
                if x in allowed:
                    if first is None:
                        first = x
                    else:
                        return Edge(c, first, x)
        return None


def matching_vertices(M):
    return {x: c for c, e in M.items() for x in (e.u, e.v)}
