"""Exact rainbow-matching search by backtracking over colours.

Colours are tried in increasing kernel size.  Each node is pruned with a
capacity bound: the cliques still holding two free vertices are merged into
connected components, a component on s free vertices can host at most s // 2
disjoint edges, and a bipartite assignment of colours to components (with those
capacities) bounds how many more colours can still be matched.
"""
from __future__ import annotations

import time

from ..core import Edge, Instance, Matching, validate_instance
from ..errors import ValidationError
from ._graph import BudgetExhausted, Counter
from .outcome import ABSENT, BUDGET, FOUND, SolveOutcome, Stats


def capacity_bound(classes, colours, used) -> int:
    """Upper bound on the number of ``colours`` that can still receive disjoint edges."""
    parent = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    hosts = []  # per colour: representative vertices of cliques with >= 2 free vertices
    for c in colours:
        reps = []
        for k in classes[c]:
            free = [x for x in k if x not in used]
            if len(free) < 2:
                continue
            for x in free:
                parent.setdefault(x, x)
            r = find(free[0])
            for x in free[1:]:
                s = find(x)
                if s != r:
                    parent[s] = r
            reps.append(free[0])
        hosts.append(reps)

    size = {}
    for x in parent:
        r = find(x)
        size[r] = size.get(r, 0) + 1
    cap = {r: s // 2 for r, s in size.items()}
    adj = [sorted({find(x) for x in reps}) for reps in hosts]

    assigned = {r: [] for r in cap}

    def augment(i, seen):
        for r in adj[i]:
            if r in seen:
                continue
            seen.add(r)
            if len(assigned[r]) < cap[r]:
                assigned[r].append(i)
                return True
            for j in list(assigned[r]):
                if augment(j, seen):
                    assigned[r].remove(j)
                    assigned[r].append(i)
                    return True
        return False

    return sum(1 for i in range(len(adj)) if adj[i] and augment(i, set()))


def solve_exact(instance: Instance, size=None, budget: int = 10_000_000, time_limit=None) -> SolveOutcome:
    report = validate_instance(instance)
    if not report.valid:
        raise ValidationError(report.violations)
    start = time.perf_counter()
    n = instance.n
    target = n if size is None else size
    classes = instance.classes
    order = sorted(range(n), key=lambda c: (sum(len(k) for k in classes[c]), c))
    counter = Counter(budget, time_limit)
    chosen: list[Edge] = []
    used: set = set()

    def search(i):
        counter.tick()
        counter.depth = max(counter.depth, len(chosen))
        need = target - len(chosen)
        if need == 0:
            return True
        rest = order[i:]
        if len(rest) < need:
            return False
        if capacity_bound(classes, rest, used) < need:
            return False
        c = order[i]
        for k in classes[c]:
            free = [x for x in k if x not in used]
            for a in range(len(free)):
                for b in range(a + 1, len(free)):
                    e = Edge(c, free[a], free[b])
                    chosen.append(e)
                    used.add(e.u)
                    used.add(e.v)
                    if search(i + 1):
                        return True
                    chosen.pop()
                    used.discard(e.u)
                    used.discard(e.v)
        if len(rest) - 1 >= need:
            return search(i + 1)
        return False

    timed_out = False
    try:
        if target > n:
            ok = False
        else:
            ok = search(0)
        cert = FOUND if ok else ABSENT
    except BudgetExhausted as exc:
        ok, cert = False, BUDGET
        timed_out = exc.reason == "time limit reached"
    stats = Stats(nodes=counter.nodes, depth=counter.depth, wall_ms=(time.perf_counter() - start) * 1000)
    if ok:
        m = Matching(tuple(sorted(chosen)))
        return SolveOutcome(FOUND, m, len(m), stats)
    return SolveOutcome(cert, None, 0, stats, timed_out=timed_out)


def max_rainbow_size(instance: Instance, budget: int = 10_000_000):
    """Largest size with a rainbow matching, or None if the budget ran out."""
    best = 0
    for s in range(1, instance.n + 1):
        out = solve_exact(instance, s, budget)
        if out.certificate == BUDGET:
            return None
        if not out.found:
            break
        best = s
    return best
