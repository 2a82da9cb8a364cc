"""Exhaustive enumeration of small instances up to element relabeling."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

import networkx as nx

from ..core import Instance
from ..errors import InfeasibleScopeError
from .exact import solve_exact
from .outcome import ABSENT, BUDGET


def set_partitions(elems) -> Iterator[list]:
    """All partitions of ``elems`` into blocks of size >= 2 (blocks keep input order)."""
    elems = list(elems)
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    for r in range(1, len(rest) + 1):
        for mates in itertools.combinations(rest, r):
            left = [x for x in rest if x not in mates]
            for tail in set_partitions(left):
                yield [[first, *mates], *tail]


def nontrivial_partitions(ground, max_kernel=None) -> list[tuple]:
    """Every equivalence relation on ``ground`` with a nonempty kernel, as sorted clique tuples."""
    ground = list(ground)
    top = len(ground) if max_kernel is None else min(max_kernel, len(ground))
    out = []
    for r in range(2, top + 1):
        for kern in itertools.combinations(ground, r):
            for p in set_partitions(kern):
                out.append(tuple(sorted(tuple(sorted(b)) for b in p)))
    return out


def _integer_partitions(k, smallest=2):
    if k == 0:
        yield []
        return
    for s in range(smallest, k + 1):
        for rest in _integer_partitions(k - s, s):
            yield [s, *rest]


def _incidence_graph(instance: Instance) -> nx.Graph:
    g = nx.Graph()
    for c, cls in enumerate(instance.classes):
        for j, k in enumerate(cls):
            g.add_node(("k", c, j), label=f"c{c}")
            for x in k:
                g.add_node(("x", x), label="x")
                g.add_edge(("k", c, j), ("x", x))
    return g


class IsomorphFilter:
    """Keeps the first instance of every relabeling class (colours stay fixed)."""

    def __init__(self):
        self._buckets: dict = {}
        self.kept = 0

    def add(self, instance: Instance) -> bool:
        g = _incidence_graph(instance)
        key = nx.weisfeiler_lehman_graph_hash(g, node_attr="label")
        bucket = self._buckets.setdefault(key, [])
        match = lambda a, b: a["label"] == b["label"]  # noqa: E731
        for h in bucket:
            if nx.is_isomorphic(g, h, node_match=match):
                return False
        bucket.append(g)
        self.kept += 1
        return True


def kernel_instances(n: int, k: int, dedupe: bool = True) -> Iterator[Instance]:
    """Instances with n <= 2 colours, every kernel of size exactly k.

    The first class is one representative per clique-size profile on 0..k-1;
    the second may reuse any old elements and introduces new ones in order,
    so the ground set never exceeds n * k.
    """
    if n > 2:
        raise InfeasibleScopeError("exhaustive kernel enumeration is limited to n <= 2")
    seen = IsomorphFilter() if dedupe else None
    for sizes in _integer_partitions(k):
        first, pos = [], 0
        for s in sorted(sizes, reverse=True):
            first.append(tuple(range(pos, pos + s)))
            pos += s
        first = tuple(first)
        if n == 1:
            yield Instance((first,)).canonical()
            continue
        for new in range(k + 1):
            fresh = list(range(k, k + new))
            for old in itertools.combinations(range(k), k - new):
                for p in set_partitions(list(old) + fresh):
                    second = tuple(sorted(tuple(sorted(b)) for b in p))
                    inst = Instance((first, second)).canonical()
                    if seen is None or seen.add(inst):
                        yield inst


def ground_instances(n: int, ground: int, max_kernel=None) -> Iterator[Instance]:
    """All instances with n colours whose kernels lie inside a ``ground``-element set.

    One instance per orbit of the symmetric group on the ground set (colour
    order is kept).  Every colour has a nonempty kernel of at most
    ``max_kernel`` elements.
    """
    parts = nontrivial_partitions(range(ground), max_kernel)
    index = {p: i for i, p in enumerate(parts)}
    perms = list(itertools.permutations(range(ground)))
    act = []
    for perm in perms:
        act.append([index[tuple(sorted(tuple(sorted(perm[x] for x in b)) for b in p))] for p in parts])

    def rec(prefix, stab):
        if len(prefix) == n:
            yield Instance(tuple(parts[i] for i in prefix))
            return
        seen = bytearray(len(parts))
        for i in range(len(parts)):
            if seen[i]:
                continue
            for p in stab:
                seen[act[p][i]] = 1
            yield from rec(prefix + [i], [p for p in stab if act[p][i] == i])

    yield from rec([], list(range(len(perms))))


@dataclass
class VRow:
    kernel: int
    verdict: str
    instances: int
    counterexample: Optional[Instance] = None


@dataclass
class VTable:
    n: int
    rows: list = field(default_factory=list)

    @property
    def v1(self) -> Optional[int]:
        """Smallest kernel size whose verdict is all-solvable, if any was reached."""
        for r in self.rows:
            if r.verdict == "all-solvable":
                return r.kernel
        return None


def compute_v_exhaustive(n: int, max_kernel: int, budget: int = 1_000_000) -> VTable:
    if n > 2:
        raise InfeasibleScopeError(f"exhaustive v computation is limited to n <= 2 (got n={n})")
    if n < 1:
        raise InfeasibleScopeError("n must be at least 1")
    table = VTable(n)
    for k in range(2, max_kernel + 1):
        count, witness, unknown = 0, None, False
        for inst in kernel_instances(n, k):
            count += 1
            out = solve_exact(inst, n, budget)
            if out.certificate == ABSENT and witness is None:
                witness = inst
            elif out.certificate == BUDGET:
                unknown = True
        if witness is not None:
            verdict = "counterexample exists"
        elif unknown:
            verdict = "undecided (budget)"
        else:
            verdict = "all-solvable"
        table.rows.append(VRow(k, verdict, count, witness))
    return table
