"""Local search for instances without a rainbow matching of full size.

Candidates keep every kernel at exactly the requested size and every clique at
two or more elements.  The search minimizes the number of rainbow matchings
of size n, a finer-grained proxy for "largest rainbow matching is below n":
the two agree at zero.  A candidate that reaches zero is only returned after
the exact solver certifies absence exhaustively.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from ..core import Instance, validate_instance
from ..errors import ParameterError
from .exact import solve_exact
from .outcome import ABSENT, SolveOutcome

MOVES = ("swap", "exchange", "move", "split", "merge", "copy")


def count_rainbow(classes, cap: int) -> int:
    """Number of rainbow matchings using every colour once, stopping at ``cap``."""
    n = len(classes)
    order = sorted(range(n), key=lambda c: sum(len(k) for k in classes[c]))
    used: set = set()
    total = 0

    def rec(i):
        nonlocal total
        c = order[i]
        if i == n - 1:
            total += sum(comb(sum(1 for x in k if x not in used), 2) for k in classes[c])
            return total >= cap
        for k in classes[c]:
            free = [x for x in k if x not in used]
            for a in range(len(free)):
                used.add(free[a])
                for b in range(a + 1, len(free)):
                    used.add(free[b])
                    stop = rec(i + 1)
                    used.discard(free[b])
                    if stop:
                        used.discard(free[a])
                        return True
                used.discard(free[a])
        return False

    if n == 0:
        return 1
    rec(0)
    return min(total, cap)


def _has_shared_pair(classes):
    owner = {}
    for c, cls in enumerate(classes):
        for k in cls:
            for i, a in enumerate(k):
                for b in k[i + 1:]:
                    p = (a, b) if a < b else (b, a)
                    if owner.setdefault(p, c) != c:
                        return True
    return False


def _random_class(rng, ground, kernel):
    elems = rng.sample(range(ground), kernel)
    cliques = []
    left = kernel
    i = 0
    while left > 0:
        s = rng.choice([2, 2, 3, 3, 4]) if left >= 4 else left
        if left - s == 1:
            s += 1
        cliques.append(elems[i:i + s])
        i += s
        left -= s
    return cliques


def _mutate(rng, classes, ground):
    out = [[list(k) for k in cls] for cls in classes]
    c = rng.randrange(len(out))
    cls = out[c]
    move = rng.choice(MOVES)
    if move == "swap":
        members = {x for k in cls for x in k}
        spare = [x for x in range(ground) if x not in members]
        if not spare:
            return None
        k = rng.choice(cls)
        k[rng.randrange(len(k))] = rng.choice(spare)
    elif move == "exchange":
        if len(cls) < 2:
            return None
        i, j = rng.sample(range(len(cls)), 2)
        a, b = rng.randrange(len(cls[i])), rng.randrange(len(cls[j]))
        cls[i][a], cls[j][b] = cls[j][b], cls[i][a]
    elif move == "move":
        big = [i for i, k in enumerate(cls) if len(k) >= 3]
        if not big or len(cls) < 2:
            return None
        i = rng.choice(big)
        j = rng.choice([j for j in range(len(cls)) if j != i])
        cls[j].append(cls[i].pop(rng.randrange(len(cls[i]))))
    elif move == "split":
        big = [i for i, k in enumerate(cls) if len(k) >= 4]
        if not big:
            return None
        k = cls.pop(rng.choice(big))
        rng.shuffle(k)
        cut = rng.randrange(2, len(k) - 1)
        cls.extend([k[:cut], k[cut:]])
    elif move == "merge":
        if len(cls) < 2:
            return None
        i, j = sorted(rng.sample(range(len(cls)), 2))
        cls[i].extend(cls.pop(j))
    else:
        d = rng.randrange(len(out))
        if d == c:
            return None
        out[c] = [list(k) for k in out[d]]
    return out


def _to_instance(classes, simple) -> Instance:
    used = sorted({x for cls in classes for k in cls for x in k})
    relabel = {x: i for i, x in enumerate(used)}
    return Instance(tuple(tuple(tuple(relabel[x] for x in k) for k in cls) for cls in classes), simple).canonical()


@dataclass
class FalsifyResult:
    instance: Optional[Instance]
    certificate: Optional[SolveOutcome] = None
    evaluations: int = 0
    restarts: int = 0
    best_score: Optional[int] = None
    history: list = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.instance is not None


def falsify(n: int, kernel: int, simple: bool = False, budget: int = 200_000, seed: int = 0,
            ground: Optional[int] = None, restart_every: int = 2000, cap: int = 10_000,
            exact_budget: int = 10_000_000) -> FalsifyResult:
    """Search for an instance with all kernels of size ``kernel`` and no rainbow matching of size n.

    ``budget`` counts candidate evaluations.  ``ground`` fixes the element
    universe; by default each restart draws it between kernel and
    kernel + kernel // 2.
    """
    if n < 1 or kernel < 2:
        raise ParameterError("falsify needs n >= 1 and kernel >= 2")
    rng = random.Random(seed)
    result = FalsifyResult(None)
    while result.evaluations < budget:
        result.restarts += 1
        g = ground if ground is not None else rng.randint(kernel, kernel + kernel // 2)
        g = max(g, kernel)
        cur = [_random_class(rng, g, kernel) for _ in range(n)]
        if simple and _has_shared_pair(cur):
            cur = _repair_simple(rng, cur, g, kernel)
            if cur is None:
                continue
        score = count_rainbow(cur, cap)
        result.evaluations += 1
        stale = 0
        temp = 1.0
        while result.evaluations < budget and stale < restart_every:
            if score == 0:
                inst = _to_instance(cur, simple)
                assert validate_instance(inst).valid
                cert = solve_exact(inst, n, exact_budget)
                if cert.certificate == ABSENT:
                    result.instance, result.certificate, result.best_score = inst, cert, 0
                    return result
                break
            cand = _mutate(rng, cur, g)
            if cand is None or (simple and _has_shared_pair(cand)):
                continue
            new = count_rainbow(cand, cap)
            result.evaluations += 1
            if new <= score or rng.random() < math.exp(-(new - score) / max(temp, 1e-9)):
                stale = stale + 1 if new >= score else 0
                cur, score = cand, new
            else:
                stale += 1
            temp *= 0.999
            if result.best_score is None or score < result.best_score:
                result.best_score = score
    return result


def _repair_simple(rng, classes, ground, kernel, tries=200):
    for _ in range(tries):
        if not _has_shared_pair(classes):
            return classes
        c = rng.randrange(len(classes))
        classes[c] = _random_class(rng, ground, kernel)
    return None if _has_shared_pair(classes) else classes
