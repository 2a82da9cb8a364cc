"""Instances, matchings, switchings and the predicates the solvers rely on.

An instance is a list of colour classes; each class is a list of vertex-disjoint
cliques over integer elements.  Edges are never stored: ``{u, v}`` is an edge of
colour ``c`` exactly when ``u`` and ``v`` sit in the same clique of class ``c``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .errors import (
    InvalidColourError,
    InvalidMissingColourError,
    InvalidReferenceError,
    SwitchingApplicationError,
)

VertexSet = frozenset  # frozenset[int]; sorted() wherever order matters


class Edge(NamedTuple):
    colour: int
    u: int
    v: int

    @classmethod
    def of(cls, colour: int, a: int, b: int) -> "Edge":
        if a == b:
            raise ValueError(f"loop edge on element {a}")
        return cls(colour, a, b) if a < b else cls(colour, b, a)

    @property
    def ends(self) -> tuple[int, int]:
        return (self.u, self.v)


@dataclass(frozen=True)
class Matching:
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))

    def __len__(self):
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def vertices(self) -> frozenset:
        return frozenset(x for e in self.edges for x in (e.u, e.v))

    def colours(self) -> list[int]:
        return [e.colour for e in self.edges]

    def by_colour(self) -> dict[int, Edge]:
        return {e.colour: e for e in self.edges}

    def sorted(self) -> "Matching":
        return Matching(tuple(sorted(self.edges)))


@dataclass(frozen=True)
class Switching:
    """The sequence (e0, m1, e1, ..., e_{k-1}, m_k); empty when k == 0."""

    start_colour: int
    out_edges: tuple[Edge, ...] = ()
    matching_edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "out_edges", tuple(Edge(*e) for e in self.out_edges))
        object.__setattr__(self, "matching_edges", tuple(Edge(*e) for e in self.matching_edges))
        if len(self.out_edges) != len(self.matching_edges):
            raise ValueError("a switching has as many out-edges as matching edges")

    @property
    def length(self) -> int:
        return len(self.out_edges)

    @property
    def end_colour(self) -> int:
        if not self.matching_edges:
            return self.start_colour
        return self.matching_edges[-1].colour

    def vertices(self) -> frozenset:
        return frozenset(x for e in self.out_edges + self.matching_edges for x in (e.u, e.v))

    def out_vertices(self) -> frozenset:
        return frozenset(x for e in self.out_edges for x in (e.u, e.v))


def empty_switching(colour: int) -> Switching:
    return Switching(colour)


@dataclass(frozen=True)
class Instance:
    classes: tuple[tuple[tuple[int, ...], ...], ...]
    simple_mode: bool = False

    def __post_init__(self):
        object.__setattr__(
            self, "classes", tuple(tuple(tuple(int(x) for x in k) for k in cls) for cls in self.classes)
        )
        object.__setattr__(self, "simple_mode", bool(self.simple_mode))

    @property
    def n(self) -> int:
        return len(self.classes)

    @cached_property
    def _where(self) -> tuple[dict, ...]:
        # colour -> element -> clique index
        return tuple({x: i for i, k in enumerate(cls) for x in k} for cls in self.classes)

    @cached_property
    def universe(self) -> frozenset:
        return frozenset(x for cls in self.classes for k in cls for x in k)

    def check_colour(self, colour: int) -> None:
        if not isinstance(colour, int) or not 0 <= colour < self.n:
            raise InvalidColourError(f"colour {colour!r} out of range 0..{self.n - 1}")

    def clique_of(self, colour: int, x: int) -> Optional[tuple[int, ...]]:
        i = self._where[colour].get(x)
        return None if i is None else self.classes[colour][i]

    def has_edge(self, colour: int, u: int, v: int) -> bool:
        if u == v or not 0 <= colour < self.n:
            return False
        where = self._where[colour]
        i = where.get(u)
        return i is not None and where.get(v) == i

    def edges(self, colour: int) -> Iterator[Edge]:
        for k in self.classes[colour]:
            for i, a in enumerate(k):
                for b in k[i + 1:]:
                    yield Edge.of(colour, a, b)

    def canonical(self) -> "Instance":
        classes = []
        for cls in self.classes:
            classes.append(tuple(sorted(tuple(sorted(set(k))) for k in cls)))
        return Instance(tuple(classes), self.simple_mode)

    def restricted(self, colours: Sequence[int]) -> "Instance":
        """Sub-instance on the given colours, renumbered 0..len-1 in the given order."""
        return Instance(tuple(self.classes[c] for c in colours), self.simple_mode)


def kernel(instance: Instance, colour: int) -> frozenset:
    instance.check_colour(colour)
    return frozenset(x for k in instance.classes[colour] for x in k)


# -- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    colour: Optional[int] = None
    clique: Optional[int] = None


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid


def validate_instance(instance: Instance) -> ValidationReport:
    out = []
    for c, cls in enumerate(instance.classes):
        seen: dict[int, int] = {}
        for j, k in enumerate(cls):
            if len(set(k)) < 2:
                out.append(Violation("small-clique", "clique of size < 2", c, j))
            if any(x < 0 for x in k):
                out.append(Violation("negative-element", "negative element id", c, j))
            if list(k) != sorted(set(k)):
                out.append(Violation("non-canonical", "non-canonical ordering: clique elements not strictly increasing", c, j))
            for x in k:
                if x in seen and seen[x] != j:
                    out.append(Violation("duplicate-vertex", f"duplicate vertex {x} within class {c}", c, j))
                seen[x] = j
        if list(cls) != sorted(cls, key=lambda k: (min(k) if k else -1, k)):
            out.append(Violation("non-canonical", f"non-canonical ordering: cliques of class {c} not sorted", c))
    if instance.simple_mode:
        owner: dict[tuple[int, int], int] = {}
        for c, cls in enumerate(instance.classes):
            for j, k in enumerate(cls):
                s = sorted(set(k))
                for a in range(len(s)):
                    for b in range(a + 1, len(s)):
                        p = (s[a], s[b])
                        o = owner.setdefault(p, c)
                        if o != c:
                            out.append(Violation(
                                "shared-pair", f"shared pair {{{p[0]},{p[1]}}} in colours {o} and {c}", c, j))
    return ValidationReport(out)


# -- matchings ----------------------------------------------------------------


def _check_references(instance: Instance, edges: Iterable[Edge]) -> None:
    for e in edges:
        if not isinstance(e.colour, int) or not 0 <= e.colour < instance.n:
            raise InvalidReferenceError(f"edge {tuple(e)} refers to colour {e.colour} outside 0..{instance.n - 1}")
        for x in (e.u, e.v):
            if x not in instance.universe:
                raise InvalidReferenceError(f"edge {tuple(e)} refers to element {x} outside every kernel")


def is_rainbow_matching(instance: Instance, m: Matching, required_size: int) -> bool:
    _check_references(instance, m)
    if len(m) != required_size:
        return False
    verts = [x for e in m for x in (e.u, e.v)]
    if len(set(verts)) != len(verts):
        return False
    if len({e.colour for e in m}) != len(m):
        return False
    return all(instance.has_edge(e.colour, e.u, e.v) for e in m)


def _switching_problems(m: Matching, s: Switching, forbidden_start: Optional[int]) -> Optional[str]:
    """First violated switching condition, or None.  Edge membership is not checked here."""
    k = s.length
    if k == 0:
        return None
    mset = set(m.edges)
    if len(set(s.matching_edges)) != k or any(x not in mset for x in s.matching_edges):
        return "S1: matching edges must be distinct members of the matching"
    vm = m.vertices()
    for e, mi in zip(s.out_edges, s.matching_edges):
        inside = [x for x in e.ends if x in (mi.u, mi.v)]
        outside = [x for x in e.ends if x not in vm]
        if len(inside) != 1 or len(outside) != 1:
            return "S2: each out-edge joins its matching edge to a vertex outside the matching"
    c0 = s.out_edges[0].colour
    if c0 != s.start_colour or (forbidden_start is not None and c0 != forbidden_start):
        return "S3: first out-edge must carry the start colour"
    if any(mi.colour == c0 for mi in s.matching_edges):
        return "S3: start colour must differ from every matching-edge colour"
    for i in range(1, k):
        if s.out_edges[i].colour != s.matching_edges[i - 1].colour:
            return "S3: out-edge e_i must carry the colour of m_i"
    ov = [x for e in s.out_edges for x in e.ends]
    if len(set(ov)) != len(ov):
        return "S4: out-edges must be pairwise vertex-disjoint"
    return None


def validate_switching(instance: Instance, m: Matching, s: Switching, forbidden_start: int) -> bool:
    if s.length == 0:
        return True
    if _switching_problems(m, s, forbidden_start) is not None:
        return False
    return all(instance.has_edge(e.colour, e.u, e.v) for e in s.out_edges)


def apply_switching(m: Matching, s: Switching, closing: Edge, instance: Optional[Instance] = None) -> Matching:
    """Return (m - m(s)) + e(s) + {closing}, a rainbow matching one edge larger."""
    closing = Edge(*closing)
    if closing.u == closing.v:
        raise SwitchingApplicationError("closing edge is a loop")
    if closing.colour != s.end_colour:
        raise SwitchingApplicationError(
            f"closing edge colour {closing.colour} differs from the switching's end colour {s.end_colour}")
    problem = _switching_problems(m, s, None)
    if problem is not None:
        raise SwitchingApplicationError(problem)
    if instance is not None:
        for e in s.out_edges + (closing,):
            if not instance.has_edge(e.colour, e.u, e.v):
                raise SwitchingApplicationError(f"edge {tuple(e)} is not an edge of the instance")
    removed = set(s.matching_edges)
    kept = [e for e in m if e not in removed]
    if any(e.colour == closing.colour for e in kept):
        raise SwitchingApplicationError(f"closing colour {closing.colour} already used by the remaining matching")
    kept_vertices = {x for e in kept for x in e.ends}
    if kept_vertices & set(closing.ends):
        raise SwitchingApplicationError("closing edge meets V(m) outside the switched matching edges")
    if s.out_vertices() & set(closing.ends):
        raise SwitchingApplicationError("closing edge meets the switching's out-edges")
    result = Matching(tuple(sorted(kept + list(s.out_edges) + [closing])))
    verts = [x for e in result for x in e.ends]
    assert len(set(verts)) == len(verts), "switching produced overlapping edges"
    assert len({e.colour for e in result}) == len(result) == len(m) + 1, "switching produced a repeated colour"
    return result


# -- counting -----------------------------------------------------------------


def clique_disjoint_edges(clique: Iterable[int], from_: frozenset, to: frozenset) -> int:
    """Max number of disjoint pairs inside one clique with one end in from_ and one in to."""
    k = set(clique)
    both = len(k & from_ & to)
    only_from = len((k & from_) - to)
    only_to = len((k & to) - from_)
    return min(only_from + both, only_to + both, (only_from + only_to + both) // 2)


def max_disjoint_colour_edges(instance: Instance, colour: int, from_: Iterable[int], to: Iterable[int]) -> int:
    instance.check_colour(colour)
    a, b = frozenset(from_), frozenset(to)
    return sum(clique_disjoint_edges(k, a, b) for k in instance.classes[colour])


# -- switching enumeration ----------------------------------------------------


class SwitchingStream:
    """Iterator over valid switchings; ``truncated`` is set once ``limit`` cut the stream short."""

    def __init__(self, instance: Instance, m: Matching, start_colour: int, max_len: int, limit: Optional[int]):
        self.instance = instance
        self.m = m
        self.start_colour = start_colour
        self.max_len = max_len
        self.limit = limit
        self.truncated = False
        self.exhausted = False
        self._it = self._generate()

    def __iter__(self):
        return self

    def __next__(self) -> Switching:
        return next(self._it)

    def _extensions(self, s: Switching, index: dict, outside: frozenset) -> list[tuple]:
        inst = self.instance
        colour = s.end_colour
        used = set(s.matching_edges)
        used_out = s.out_vertices()
        where = inst._where[colour]
        cls = inst.classes[colour]
        out = []
        for mi in self.m:
            if mi in used or mi.colour == self.start_colour:
                continue
            for w in mi.ends:
                j = where.get(w)
                if j is None:
                    continue
                for r in cls[j]:
                    if r in outside and r not in used_out:
                        out.append(Switching(self.start_colour, s.out_edges + (Edge.of(colour, w, r),),
                                             s.matching_edges + (mi,)))
        return out

    def _generate(self) -> Iterator[Switching]:
        index = {e: i for i, e in enumerate(self.m)}
        outside = self.instance.universe - self.m.vertices()

        def key(s):
            return (tuple(index[x] for x in s.matching_edges), tuple(e.ends for e in s.out_edges))

        level = [empty_switching(self.start_colour)]
        produced = 0
        for length in range(self.max_len + 1):
            if length > 0:
                nxt = []
                for s in level:
                    nxt.extend(self._extensions(s, index, outside))
                level = sorted(nxt, key=key)
            for s in level:
                if self.limit is not None and produced >= self.limit:
                    self.truncated = True
                    return
                produced += 1
                yield s
            if not level:
                break
        self.exhausted = True


def enumerate_switchings(instance: Instance, m: Matching, start_colour: int, max_len: int,
                         limit: Optional[int] = None) -> SwitchingStream:
    instance.check_colour(start_colour)
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    return SwitchingStream(instance, m, start_colour, max_len, limit)


# -- switching-count hypothesis ---------------------------------------------


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def ceil_frac(x: Fraction) -> int:
    return math.ceil(as_fraction(x))


@dataclass
class HypothesisFailure:
    colour: int
    switching: Switching
    count: int
    required: int


@dataclass
class HypothesisReport:
    max_len: int
    delta: Fraction
    checked: int = 0
    truncated: bool = False
    failures: list[HypothesisFailure] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.failures

    @property
    def verdict(self) -> str:
        if self.failures:
            return f"fails ({len(self.failures)} failing switchings up to length {self.max_len})"
        if self.truncated:
            return f"no failure found among the first {self.checked} switchings up to length {self.max_len}"
        return f"verified up to length {self.max_len}"


def check_lemma_hypothesis(instance: Instance, m: Matching, c0: int, delta, max_len: int,
                           limit: Optional[int] = None) -> HypothesisReport:
    instance.check_colour(c0)
    delta = as_fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    if c0 in m.colours():
        raise InvalidMissingColourError(f"colour {c0} is present in the matching")
    if len(m) != instance.n - 1:
        raise ValueError(f"matching has size {len(m)}, expected n-1 = {instance.n - 1}")
    base = ceil_frac((1 + delta) * instance.n)
    vm = m.vertices()
    universe = instance.universe
    report = HypothesisReport(max_len, delta)
    stream = enumerate_switchings(instance, m, c0, max_len, limit)
    for s in stream:
        report.checked += 1
        vs = s.vertices()
        c = s.end_colour
        count = max_disjoint_colour_edges(instance, c, universe - vm - vs, universe - vs)
        need = base - 4 * s.length
        if count < need:
            report.failures.append(HypothesisFailure(c, s, count, need))
    report.truncated = stream.truncated
    return report
