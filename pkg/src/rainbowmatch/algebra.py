"""Finite set algebras and their correspondence with equivalence relations.

Subsets of a ground set are bitmasks: bit i stands for ``ground[i]``.  An
algebra is stored as the set of its member masks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import Edge, Instance, Matching, is_rainbow_matching
from .errors import GroundTooLargeError, InvalidAlgebraError, NoWitnessError

GROUND_CAP = 20
PRACTICAL_CAP = 16
PAIRWISE_CLOSURE_LIMIT = 4096


@dataclass(frozen=True)
class FiniteAlgebra:
    ground: tuple
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "ground", tuple(self.ground))
        object.__setattr__(self, "members", frozenset(self.members))
        if len(self.ground) > GROUND_CAP:
            raise GroundTooLargeError(f"ground set of {len(self.ground)} elements exceeds the cap of {GROUND_CAP}")

    @property
    def full(self) -> int:
        return (1 << len(self.ground)) - 1

    def mask(self, elems) -> int:
        pos = {x: i for i, x in enumerate(self.ground)}
        out = 0
        for x in elems:
            out |= 1 << pos[x]
        return out

    def subset(self, mask: int) -> frozenset:
        return frozenset(x for i, x in enumerate(self.ground) if mask >> i & 1)

    def __contains__(self, elems) -> bool:
        return self.mask(elems) in self.members

    def closure_problems(self) -> list[str]:
        full = self.full
        out = []
        if not self.members:
            out.append("algebra is empty")
            return out
        if 0 not in self.members or full not in self.members:
            out.append("algebra must contain the empty set and the ground set")
        for a in self.members:
            if a & ~full:
                out.append(f"member {sorted(self.subset(a))} leaves the ground set")
                return out
            if full ^ a not in self.members:
                out.append(f"complement of {sorted(self.subset(a))} is missing")
                return out
        if len(self.members) <= PAIRWISE_CLOSURE_LIMIT:
            ms = sorted(self.members)
            for i, a in enumerate(ms):
                for b in ms[i + 1:]:
                    if a | b not in self.members:
                        out.append(f"union of {sorted(self.subset(a))} and {sorted(self.subset(b))} is missing")
                        return out
        else:
            # closed under unions iff every member is a union of atoms and all such unions are present
            atoms = _atoms(self.members)
            if sum(bin(a).count("1") for a in atoms) != len(self.ground) or len(self.members) != 1 << len(atoms):
                out.append("members are not exactly the unions of the atoms")
        return out

    def to_obj(self) -> dict:
        members = sorted((sorted(self.subset(m)) for m in self.members), key=lambda s: (len(s), s))
        return {"ground": list(self.ground), "members": members}


def _atoms(members) -> list[int]:
    nonempty = sorted((m for m in members if m), key=lambda m: (bin(m).count("1"), m))
    atoms = []
    for m in nonempty:
        if not any(a & m == a for a in atoms):
            atoms.append(m)
    return atoms


def _ground_check(ground):
    if len(ground) > GROUND_CAP:
        raise GroundTooLargeError(f"ground set of {len(ground)} elements exceeds the cap of {GROUND_CAP}")


def relation_to_algebra(instance: Instance, colour: int, ground: Sequence[int]) -> FiniteAlgebra:
    """All unions of equivalence classes; elements outside the kernel are singleton classes."""
    instance.check_colour(colour)
    ground = tuple(sorted(set(ground)))
    _ground_check(ground)
    pos = {x: i for i, x in enumerate(ground)}
    blocks = []
    covered = set()
    for k in instance.classes[colour]:
        missing = [x for x in k if x not in pos]
        if missing:
            raise ValueError(f"kernel element {missing[0]} of colour {colour} lies outside the ground set")
        blocks.append(sum(1 << pos[x] for x in k))
        covered.update(k)
    blocks.extend(1 << pos[x] for x in ground if x not in covered)
    members = {0}
    for b in blocks:
        members |= {m | b for m in members}
    alg = FiniteAlgebra(ground, frozenset(members))
    problems = alg.closure_problems()
    assert not problems, problems
    return alg


def algebra_to_relation(a: FiniteAlgebra) -> list[tuple]:
    """The atoms (inclusion-minimal nonempty members) as sorted blocks; they partition the ground set."""
    problems = a.closure_problems()
    if problems:
        raise InvalidAlgebraError(problems[0])
    blocks = [tuple(sorted(a.subset(m))) for m in _atoms(a.members)]
    covered = sum(len(b) for b in blocks)
    if covered != len(a.ground):
        raise InvalidAlgebraError("atoms do not cover the ground set")
    return sorted(blocks)


def relation_of(a: FiniteAlgebra) -> tuple:
    """Nontrivial blocks only, i.e. the clique list of the corresponding colour class."""
    return tuple(b for b in algebra_to_relation(a) if len(b) >= 2)


@dataclass(frozen=True)
class WitnessFamily:
    """Pairs (U_i^1, U_i^2) indexed by colour; all 2n sets pairwise disjoint."""

    pairs: tuple = field(default_factory=tuple)

    def __post_init__(self):
        pairs = tuple((frozenset(a), frozenset(b)) for a, b in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        seen = set()
        for a, b in pairs:
            for s in (a, b):
                if seen & s:
                    raise ValueError("witness sets must be pairwise disjoint")
                seen |= s


def witness_from_matching(instance: Instance, matching: Matching) -> WitnessFamily:
    """U_i^1 = {x_i}, U_i^2 = {y_i} for the edge (x_i, y_i) of colour i."""
    if not is_rainbow_matching(instance, matching, instance.n):
        raise NoWitnessError("witness construction needs a rainbow matching using every colour")
    by = matching.by_colour()
    return WitnessFamily(tuple(({by[i].u}, {by[i].v}) for i in range(instance.n)))


@dataclass
class WitnessReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_witness_property(algebras: Sequence[FiniteAlgebra], w: WitnessFamily) -> WitnessReport:
    """Scan every Q in the power set: if Q holds one set of a pair and misses the other, Q is not a member."""
    report = WitnessReport()
    if len(algebras) < len(w.pairs):
        raise ValueError("need one algebra per witness pair")
    for i, (u1, u2) in enumerate(w.pairs):
        a = algebras[i]
        if len(a.ground) > PRACTICAL_CAP:
            raise GroundTooLargeError(
                f"power-set scan over {len(a.ground)} elements exceeds the practical cap of {PRACTICAL_CAP}")
        m1, m2 = a.mask(u1), a.mask(u2)
        for q in range(a.full + 1):
            report.checked += 1
            for inside, outside in ((m1, m2), (m2, m1)):
                if q & inside == inside and not q & outside and q in a.members:
                    report.violations.append((i, sorted(a.subset(q))))
    return report


def matching_from_witness(algebras: Sequence[FiniteAlgebra], w: WitnessFamily) -> Matching:
    """Recover a rainbow matching from a witness family with the scan property."""
    edges = []
    for i, (u1, u2) in enumerate(w.pairs):
        a = algebras[i]
        m1, m2 = a.mask(u1), a.mask(u2)
        atoms = _atoms(a.members)
        q = 0
        for at in atoms:
            if at & m1:
                q |= at
        # minimality: dropping any atom of q loses part of U^1
        for at in atoms:
            if at & q == at:
                assert (q & ~at) & m1 != m1, "minimal member check failed"
        if q not in a.members or q & m1 != m1:
            raise NoWitnessError(f"no member contains U^1 for colour {i}")
        if not q & m2:
            raise NoWitnessError(f"the least member containing U^1 misses U^2 for colour {i}")
        hits = [at for at in atoms if at & m1 and at & m2]
        if not hits:
            raise NoWitnessError(f"no equivalence class of colour {i} meets both witness sets")
        best = min(hits, key=lambda at: min(a.subset(at)))
        x = min(a.subset(best & m1))
        y = min(a.subset(best & m2))
        edges.append(Edge.of(i, x, y))
    return Matching(tuple(sorted(edges)))


def parse_algebra_obj(obj) -> FiniteAlgebra:
    ground = obj["ground"]
    alg = FiniteAlgebra(tuple(ground), frozenset())
    members = frozenset(alg.mask(m) for m in obj["members"])
    return FiniteAlgebra(tuple(ground), members)
