"""Instance constructions: the triangle lower-bound family and seeded random instances."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .core import Instance
from .errors import GenerationError, ParameterError


def extremal_triangles(n: int) -> Instance:
    """n identical colour classes, each n - 1 disjoint triangles on 0..3n-4."""
    if n < 2:
        raise ParameterError("extremal_triangles needs n >= 2")
    cls = tuple((3 * i, 3 * i + 1, 3 * i + 2) for i in range(n - 1))
    return Instance(tuple(cls for _ in range(n)))


@dataclass(frozen=True)
class RandomSpec:
    n: int
    kernel: int
    clique_size_weights: dict = field(default_factory=lambda: {2: 1, 3: 1, 4: 1})
    overlap: float = 0.8
    simple_mode: bool = False
    seed: int = 0
    max_retries: int = 200

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("n must be at least 1")
        if self.kernel < 2:
            raise ParameterError("kernel must be at least 2")
        if not self.clique_size_weights or any(s < 2 or w < 0 for s, w in self.clique_size_weights.items()):
            raise ParameterError("clique sizes must be >= 2 with non-negative weights")
        if sum(self.clique_size_weights.values()) <= 0:
            raise ParameterError("clique size weights must not all be zero")
        if not 0 <= self.overlap <= 1:
            raise ParameterError("overlap must lie in [0, 1]")


def _clique_sizes(rng, spec):
    sizes, weights = zip(*sorted(spec.clique_size_weights.items()))
    left = spec.kernel
    out = []
    while left > 0:
        s = rng.choices(sizes, weights)[0]
        if s > left:
            s = left
        if s == 1:
            out[-1] += 1
        else:
            out.append(s)
        left -= s
    return out


def _draw_reused(rng, pool, taken):
    if not pool:
        return None
    for _ in range(8):
        x = rng.choice(pool)
        if x not in taken:
            return x
    rest = [x for x in pool if x not in taken]
    return rng.choice(rest) if rest else None


def random_instance(spec: RandomSpec) -> Instance:
    """Each colour gets cliques summing to exactly ``spec.kernel`` elements.

    Every clique slot reuses a previously seen element with probability
    ``overlap`` (uniformly among those not yet in this class), otherwise takes
    a fresh element.  In simple mode a reused element must not form a pair
    already owned by an earlier colour; when none qualifies the slot takes a
    fresh element, and a clique that still repeats a pair is redrawn.
    """
    rng = random.Random(spec.seed)
    pool: list[int] = []
    fresh = 0
    owner: dict = {}
    partners: dict = {}  # element -> elements it already shares a clique with in earlier colours
    classes = []
    for c in range(spec.n):
        in_class: set = set()
        cls = []
        for size in _clique_sizes(rng, spec):
            for _ in range(spec.max_retries + 1):
                clique = []
                taken = set(in_class)
                new = 0
                for _ in range(size):
                    x = None
                    if rng.random() < spec.overlap:
                        blocked = taken
                        if spec.simple_mode:
                            blocked = taken.union(*(partners.get(y, ()) for y in clique))
                        x = _draw_reused(rng, pool, blocked)
                    if x is None:
                        x = fresh + new
                        new += 1
                    clique.append(x)
                    taken.add(x)
                clique.sort()
                pairs = [(a, b) for i, a in enumerate(clique) for b in clique[i + 1:]]
                if not spec.simple_mode or all(owner.get(p, c) == c for p in pairs):
                    break
            else:
                raise GenerationError(
                    f"simple mode: could not place a clique of size {size} for colour {c} "
                    f"after {spec.max_retries} retries")
            fresh += new
            pool.extend(x for x in clique if x >= fresh - new)
            in_class.update(clique)
            for p in pairs:
                owner[p] = c
            cls.append(tuple(clique))
        for k in cls:
            for x in k:
                partners.setdefault(x, set()).update(y for y in k if y != x)
        classes.append(tuple(cls))
    return Instance(tuple(classes), spec.simple_mode).canonical()
