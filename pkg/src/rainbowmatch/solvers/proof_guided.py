"""Augmentation that follows the inductive argument for rainbow matchings.

One level works on a matching M of size n - 1 with missing colour c0 and a
slack parameter delta:

1. add a c0-edge lying entirely outside V(M) if there is one;
2. for every colour c with a length-one switching (e0, m_c) try to close it
   with a c-edge outside V(M) and away from e0;
3. pick the matching edge m2 that is c-good for the most colours c, split on
   whether one free vertex carries a third of the edges towards one end of m2,
   and assemble a switching (e0, m1, e1, m2), a colour set C* of size
   ceil(delta n / 6) and edges e_c from free vertices into m2;
4. delete the colours of C* plus c0, c1 and the vertices of the switching,
   of the e_c and of the C*-coloured matching edges, then recurse with missing
   colour c2 = c(m2) and delta' = (ceil(delta n) - 12) / n';
5. return the recursive matching together with the C*-coloured edges of M and
   the out-edges of the switching.

The argument only guarantees its witnesses once n is large compared to
144 / delta^2.  Whenever a witness is missing the level falls back to the
bounded switching search and says so in its trace.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..core import Edge, Instance, Matching, Switching, _switching_problems, as_fraction
from ..errors import InvalidMissingColourError
from ._graph import BudgetExhausted, CliqueGraph, Counter, matching_vertices
from .outcome import SolverParams, Stats
from .switching import augment_graph

REDUCING = ("concentrated", "spread")


@dataclass
class LevelTrace:
    n: int
    delta: Fraction
    missing_colour: int
    branch: str = ""
    switching: Optional[Switching] = None
    c1: Optional[int] = None
    c2: Optional[int] = None
    C1: tuple = ()
    C2: tuple = ()
    C_star: tuple = ()
    m2: Optional[Edge] = None
    mu: int = 0
    e_c: dict = field(default_factory=dict)
    W: tuple = ()
    S: frozenset = frozenset()
    reduced_colours: tuple = ()
    n_reduced: Optional[int] = None
    delta_reduced: Optional[Fraction] = None
    fallback: Optional[str] = None
    success: bool = False
    output_size: Optional[int] = None


@dataclass
class ProofTrace:
    levels: list = field(default_factory=list)
    stats: Stats = field(default_factory=Stats)
    reason: str = ""

    @property
    def fallback_taken(self) -> bool:
        return any(lv.fallback for lv in self.levels)

    @property
    def reductions(self) -> list:
        return [lv for lv in self.levels if lv.branch in REDUCING]


def identity_violations(lv: LevelTrace) -> list[str]:
    """Arithmetic identities a reducing level must satisfy."""
    if lv.branch not in REDUCING or lv.n_reduced is None:
        return []
    out = []
    n, d = lv.n, lv.delta
    if len(lv.C_star) != math.ceil(d * n / 6):
        out.append(f"|C*| = {len(lv.C_star)} != ceil(delta n / 6) = {math.ceil(d * n / 6)}")
    if lv.n_reduced != math.floor(n * (1 - d / 6)) - 2:
        out.append(f"n' = {lv.n_reduced} != floor(n(1 - delta/6)) - 2 = {math.floor(n * (1 - d / 6)) - 2}")
    if lv.delta_reduced * lv.n_reduced < d * n - 12:
        out.append("delta' n' < delta n - 12")
    if lv.success and not lv.fallback:
        if lv.n_reduced + len(lv.C_star) + 2 != n or lv.output_size != n:
            out.append(f"output size {lv.output_size} != n' + |C*| + 2 = {lv.n_reduced + len(lv.C_star) + 2}")
    return out


class _Level:
    def __init__(self, g: CliqueGraph, M: dict, c0: int, delta: Fraction, counter: Counter,
                 trace: ProofTrace, max_len: int, depth: int):
        self.g, self.M, self.c0, self.delta = g, M, c0, delta
        self.counter, self.trace, self.max_len, self.depth = counter, trace, max_len, depth
        self.lv = LevelTrace(len(g.colours), delta, c0)
        trace.levels.append(self.lv)
        trace.stats.recursion_depth = max(trace.stats.recursion_depth, depth)

    def run(self) -> Optional[dict]:
        self.counter.tick()
        out = self._proof_steps()
        lv = self.lv
        if out is None and lv.fallback is None:
            lv.fallback = "reduced instance not solved"
        if out is None:
            got = augment_graph(self.g, self.M, self.c0, self.max_len, self.counter)
            out = None if got is None else got[0]
        lv.success = out is not None
        lv.output_size = None if out is None else len(out)
        return out

    def _fail(self, reason):
        self.lv.fallback = reason
        self.lv.branch = self.lv.branch or "fallback"
        return None

    def _proof_steps(self) -> Optional[dict]:
        g, M, c0, lv = self.g, self.M, self.c0, self.lv
        n = lv.n
        vm = matching_vertices(M)
        R = g.vertices - vm.keys()

        e = g.edges_within(c0, R)
        if e is not None:
            lv.branch = "direct"
            return {**M, c0: e}

        # length-one switchings sigma_c = (e0^c, m_c)
        sigma = {}
        for c in sorted(M):
            mc = M[c]
            for w in mc.ends:
                k = g.clique(c0, w)
                rs = [r for r in k if r in R] if k else []
                if rs:
                    sigma[c] = (Edge.of(c0, w, rs[0]), mc, rs[0])
                    break
        lv.C1 = tuple(sorted(sigma))
        for c in lv.C1:
            e0, mc, r = sigma[c]
            e = g.edges_within(c, R - {r})
            if e is not None:
                lv.branch = "one-step-direct"
                out = {k: v for k, v in M.items() if k != c}
                out[c0] = e0
                out[c] = e
                return out

        need = math.ceil(self.delta * n / 6)
        if need <= 0:
            return self._fail("non-positive delta: no colour set to reserve")

        def candidates(c, end):
            k = g.clique(c, end)
            r_c = sigma[c][2]
            return [r for r in k if r in R and r != r_c] if k else []

        def good_pair(xs, ys):
            for a in xs:
                for b in ys:
                    if a != b:
                        return a, b
            return None

        good = {}
        for mcol in sorted(M):
            m = M[mcol]
            good[mcol] = [c for c in lv.C1 if c != mcol
                          and good_pair(candidates(c, m.u), candidates(c, m.v)) is not None]
        if not good:
            return self._fail("no matching edges")
        mu = max(len(v) for v in good.values())
        m2col = min(c for c, v in good.items() if len(v) == mu)
        lv.mu = mu
        if mu == 0:
            return self._fail("no c-good matching edge")
        m2 = M[m2col]
        lv.m2, lv.c2 = m2, m2col
        C2 = good[m2col]
        lv.C2 = tuple(C2)

        for x, y in ((m2.u, m2.v), (m2.v, m2.u)):
            rx, ry = {}, {}
            for c in C2:
                rx[c], ry[c] = good_pair(candidates(c, x), candidates(c, y))
            load = {}
            for c in C2:
                load[rx[c]] = load.get(rx[c], 0) + 1
            top = max(load.values())
            v_star = min(v for v, k in load.items() if k == top)
            chosen = None
            if 3 * top >= len(C2):
                branch = "concentrated"
                Xp = [c for c in C2 if rx[c] == v_star]
                if len(Xp) >= need + 1:
                    chosen = (Xp[0], Xp[1:need + 1])
            else:
                branch = "spread"
                for c1 in C2:
                    e0 = sigma[c1][0]
                    bad = {ry[c1], *e0.ends}
                    Xs = [c for c in C2 if c != c1 and rx[c] not in bad][:need]
                    if len(Xs) == need:
                        chosen = (c1, Xs)
                        break
            if chosen is None:
                continue
            c1, cstar = chosen
            e0, m1, _ = sigma[c1]
            e1 = Edge.of(c1, ry[c1], y)
            sw = Switching(c0, (e0, e1), (m1, m2))
            problem = _switching_problems(Matching(tuple(M.values())), sw, c0)
            vs = sw.vertices()
            if problem is not None or any(rx[c] in vs for c in cstar):
                continue
            lv.branch = branch
            return self._reduce(sw, c1, m2col, x, list(cstar), rx)

        return self._fail(f"reserved-colour witness missing (need {need} reserved colours)")

    def _reduce(self, sw, c1, c2, x, cstar, rx) -> Optional[dict]:
        g, M, c0, lv = self.g, self.M, self.c0, self.lv
        n = lv.n
        lv.switching, lv.c1 = sw, c1
        lv.C_star = tuple(cstar)
        lv.e_c = {c: Edge.of(c, rx[c], x) for c in cstar}
        W = tuple(M[c] for c in cstar)
        S = frozenset(rx[c] for c in cstar)
        lv.W, lv.S = W, S
        drop = set(cstar) | {c0, c1}
        Cp = tuple(c for c in g.colours if c not in drop)
        removed = set(sw.vertices()) | S | {v for e in W for v in e.ends}
        g2 = g.restrict(Cp, removed)
        M2 = {c: e for c, e in M.items() if c not in drop and c != c2}
        n2 = len(Cp)
        d2 = Fraction(math.ceil(self.delta * n) - 12, n2)
        lv.reduced_colours, lv.n_reduced, lv.delta_reduced = Cp, n2, d2
        bad = identity_violations(lv)
        assert not bad, bad
        sub = _Level(g2, M2, c2, d2, self.counter, self.trace, self.max_len, self.depth + 1).run()
        if sub is None:
            return None
        out = dict(sub)
        for e in W:
            out[e.colour] = e
        for e in sw.out_edges:
            out[e.colour] = e
        verts = [v for e in out.values() for v in e.ends]
        assert len(set(verts)) == len(verts), "combined matching is not a matching"
        assert len(out) == n2 + len(cstar) + 2 == n, "combined matching has the wrong size"
        return out


def guided_augment_graph(g: CliqueGraph, M: dict, c0: int, delta, max_len: int, counter: Counter,
                         trace: ProofTrace) -> Optional[dict]:
    return _Level(g, M, c0, as_fraction(delta), counter, trace, max_len, 0).run()


def proof_guided_augment(instance: Instance, m: Matching, missing: int, params: SolverParams,
                         counter: Optional[Counter] = None):
    """Return (matching of size n or None, ProofTrace)."""
    instance.check_colour(missing)
    if missing in m.colours():
        raise InvalidMissingColourError(f"colour {missing} is present in the matching")
    if len(m) != instance.n - 1 or len(set(m.colours())) != len(m):
        raise ValueError(f"expected a rainbow matching of size n - 1 = {instance.n - 1}, got {len(m)} edges")
    if counter is None:
        counter = Counter(params.node_budget, params.time_limit)
    trace = ProofTrace()
    g = CliqueGraph.from_instance(instance)
    try:
        out = guided_augment_graph(g, m.by_colour(), missing, params.delta, params.max_switch_len, counter, trace)
    except BudgetExhausted as exc:
        out = None
        trace.reason = exc.reason
    trace.stats.nodes, trace.stats.switchings, trace.stats.depth = counter.nodes, counter.switchings, counter.depth
    if out is None:
        trace.reason = trace.reason or "no augmentation found"
        return None, trace
    return Matching(tuple(sorted(out.values()))), trace
