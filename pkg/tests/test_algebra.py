import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbowmatch import Edge, Instance, Matching, is_rainbow_matching, solve_exact
from rainbowmatch.algebra import (FiniteAlgebra, WitnessFamily, algebra_to_relation, matching_from_witness,
                                  parse_algebra_obj, relation_of, relation_to_algebra, verify_witness_property,
                                  witness_from_matching)
from rainbowmatch.errors import GroundTooLargeError, InvalidAlgebraError, NoWitnessError


def alg(ground, members):
    a = FiniteAlgebra(tuple(ground), frozenset())
    return FiniteAlgebra(tuple(ground), frozenset(a.mask(m) for m in members))


@st.composite
def partitions(draw, max_ground=8):
    size = draw(st.integers(1, max_ground))
    labels = draw(st.lists(st.integers(0, size - 1), min_size=size, max_size=size))
    blocks = {}
    for x, b in enumerate(labels):
        blocks.setdefault(b, []).append(x)
    return size, sorted(tuple(b) for b in blocks.values())


def as_instance(blocks_per_colour):
    return Instance(tuple(tuple(b for b in blocks if len(b) >= 2) for blocks in blocks_per_colour))


def test_relation_to_algebra_examples():
    inst = Instance((((1, 2),),))
    a = relation_to_algebra(inst, 0, [1, 2, 3])
    assert {frozenset(a.subset(m)) for m in a.members} == {frozenset(), frozenset({3}), frozenset({1, 2}),
                                                         frozenset({1, 2, 3})}
    a = relation_to_algebra(Instance((((1, 2, 3),),)), 0, [1, 2, 3])
    assert len(a.members) == 2


def test_algebra_to_relation_examples():
    assert algebra_to_relation(alg([1, 2, 3], [[], [3], [1, 2], [1, 2, 3]])) == [(1, 2), (3,)]
    assert algebra_to_relation(alg([1, 2], [[], [1], [2], [1, 2]])) == [(1,), (2,)]
    assert relation_of(alg([1, 2, 3], [[], [3], [1, 2], [1, 2, 3]])) == ((1, 2),)


def test_closure_problems_are_reported():
    assert alg([1, 2, 3], [[], [1], [2], [1, 2, 3]]).closure_problems()
    assert alg([1, 2, 3], [[], [1], [2, 3], [1, 2], [3], [1, 2, 3]]).closure_problems()
    assert alg([1, 2], []).closure_problems() == ["algebra is empty"]
    with pytest.raises(InvalidAlgebraError):
        algebra_to_relation(alg([1, 2, 3], [[], [1], [1, 2, 3]]))


def test_ground_caps():
    with pytest.raises(GroundTooLargeError):
        FiniteAlgebra(tuple(range(21)), frozenset())
    inst = Instance((tuple((2 * i, 2 * i + 1) for i in range(9)),))
    big = relation_to_algebra(inst, 0, range(18))
    w = WitnessFamily((({0}, {1}),))
    with pytest.raises(GroundTooLargeError):
        verify_witness_property([big], w)


def test_large_algebra_uses_atom_closure_check():
    inst = Instance((((0, 1),),))
    a = relation_to_algebra(inst, 0, range(14))
    assert len(a.members) == 2 ** 13 and a.closure_problems() == []
    broken = FiniteAlgebra(a.ground, a.members - {a.mask([0, 1])} | {a.mask([0])})
    assert broken.closure_problems()


@settings(max_examples=200)
@given(partitions())
def test_round_trip_and_closure(part):
    size, blocks = part
    inst = as_instance([blocks])
    a = relation_to_algebra(inst, 0, range(size))
    assert a.closure_problems() == []
    assert len(a.members) == 2 ** len(blocks)
    full = a.full
    for x in a.members:
        assert full ^ x in a.members
        for y in a.members:
            assert x | y in a.members and x & y in a.members
    assert algebra_to_relation(a) == blocks
    assert relation_of(a) == inst.classes[0]


@settings(max_examples=200)
@given(partitions())
def test_non_member_has_a_non_member_singleton(part):
    size, blocks = part
    a = relation_to_algebra(as_instance([blocks]), 0, range(size))
    for q in range(a.full + 1):
        if q not in a.members:
            assert any(1 << i not in a.members for i in range(size) if q >> i & 1)


@settings(max_examples=100, deadline=None)
@given(st.lists(partitions(6), min_size=1, max_size=3))
def test_witness_round_trip(parts):
    size = 6
    inst = as_instance([[b for b in blocks if max(b) < size] for _, blocks in parts])
    out = solve_exact(inst)
    if not out.found:
        return
    ground = range(size)
    algebras = [relation_to_algebra(inst, c, ground) for c in range(inst.n)]
    w = witness_from_matching(inst, out.matching)
    assert len(w.pairs) == inst.n
    report = verify_witness_property(algebras, w)
    assert report.passed and report.checked == inst.n * 2 ** size
    back = matching_from_witness(algebras, w)
    assert is_rainbow_matching(inst, back, inst.n)
    assert back == out.matching.sorted()


def test_witness_from_edge():
    inst = Instance((((1, 2),),))
    w = witness_from_matching(inst, Matching((Edge(0, 1, 2),)))
    assert w.pairs == ((frozenset({1}), frozenset({2})),)
    with pytest.raises(NoWitnessError):
        witness_from_matching(Instance((((1, 2),), ((1, 3),))), Matching((Edge(0, 1, 2),)))


def test_scan_examples():
    a = alg([1, 2, 3], [[], [3], [1, 2], [1, 2, 3]])
    rep = verify_witness_property([a], WitnessFamily((({1}, {2}),)))
    assert rep.passed and rep.checked == 8
    assert verify_witness_property([], WitnessFamily()).passed


def test_scan_negative_case():
    # {1, 2} is a colour-0 edge; offered as a witness for colour 1, whose class {1, 3} shares vertex 1
    inst = Instance((((1, 2),), ((1, 3),)))
    a1 = relation_to_algebra(inst, 1, [1, 2, 3])
    w = WitnessFamily((({1}, {2}),))
    rep = verify_witness_property([a1], w)
    assert not rep.passed
    assert (0, [1, 3]) in rep.violations
    with pytest.raises(NoWitnessError):
        matching_from_witness([a1], w)
    a0 = relation_to_algebra(inst, 0, [1, 2, 3])
    assert verify_witness_property([a0], w).passed


def test_witness_sets_must_be_disjoint():
    with pytest.raises(ValueError):
        WitnessFamily((({1}, {2}), ({2}, {3})))


def test_matching_from_larger_witness_sets():
    inst = Instance((((0, 1, 2, 3), (4, 5)),))
    a = relation_to_algebra(inst, 0, range(6))
    w = WitnessFamily((({2, 0}, {3}),))
    assert verify_witness_property([a], w).passed
    assert matching_from_witness([a], w) == Matching((Edge(0, 0, 3),))


def test_parse_algebra_obj_round_trip():
    a = alg([1, 2, 3], [[], [3], [1, 2], [1, 2, 3]])
    obj = a.to_obj()
    assert obj["members"] == [[], [3], [1, 2], [1, 2, 3]]
    assert parse_algebra_obj(obj) == a


def test_random_closures_recover_atoms():
    rng = random.Random(0)
    for _ in range(50):
        size = rng.randint(1, 8)
        labels = [rng.randrange(size) for _ in range(size)]
        blocks = {}
        for x, b in enumerate(labels):
            blocks.setdefault(b, 0)
            blocks[b] |= 1 << x
        members = {0}
        for b in blocks.values():
            members |= {m | b for m in members}
        a = FiniteAlgebra(tuple(range(size)), frozenset(members))
        assert a.closure_problems() == []
        assert sorted(algebra_to_relation(a)) == sorted(tuple(i for i in range(size) if b >> i & 1)
                                                       for b in blocks.values())
