import pytest
from hypothesis import given, settings

from rainbowmatch import Instance, extremal_triangles, is_rainbow_matching
from rainbowmatch.errors import ValidationError
from rainbowmatch.solvers import ABSENT, BUDGET, FOUND, capacity_bound, max_rainbow_size, solve_exact
from oracles import naive_has_rainbow, naive_max_rainbow
from strategies import instances


def test_two_triangles_on_three_vertices():
    assert solve_exact(Instance((((1, 2, 3),), ((1, 2, 3),))), 2).certificate == ABSENT


def test_two_disjoint_triangles():
    out = solve_exact(Instance((((1, 2, 3),), ((4, 5, 6),))), 2)
    assert out.certificate == FOUND and out.size == 2


@pytest.mark.parametrize("n", range(2, 9))
def test_extremal_triangles(n):
    inst = extremal_triangles(n)
    assert solve_exact(inst, n).certificate == ABSENT
    out = solve_exact(inst, n - 1)
    assert out.found and is_rainbow_matching(inst, out.matching, n - 1)


def test_size_zero_and_oversize():
    inst = Instance((((0, 1),),))
    assert solve_exact(inst, 0).found
    assert solve_exact(inst, 2).certificate == ABSENT


def test_budget_is_reported_not_absence():
    inst = Instance(tuple((tuple(range(12)),) for _ in range(6)))
    out = solve_exact(inst, 6, budget=1)
    assert out.certificate == BUDGET and out.status == "not-found" and out.matching is None
    assert solve_exact(inst, 6, budget=100).found


def test_invalid_instance_is_rejected():
    with pytest.raises(ValidationError):
        solve_exact(Instance((((0,),),)))


@settings(max_examples=300, deadline=None)
@given(instances(max_n=3, ground=7))
def test_agrees_with_naive_checker(inst):
    for size in range(inst.n + 1):
        out = solve_exact(inst, size)
        assert out.found == naive_has_rainbow(inst.classes, size)
        if out.found:
            assert is_rainbow_matching(inst, out.matching, size)


@settings(max_examples=150, deadline=None)
@given(instances(max_n=4, ground=8))
def test_max_size_matches_naive(inst):
    assert max_rainbow_size(inst) == naive_max_rainbow(inst.classes)


@settings(max_examples=200, deadline=None)
@given(instances(max_n=4, ground=8))
def test_capacity_bound_is_an_upper_bound(inst):
    used = {0, 3}
    reduced = tuple(tuple(k for k in (tuple(x for x in k if x not in used) for k in cls) if len(k) >= 2)
                    for cls in inst.classes)
    assert capacity_bound(inst.classes, range(inst.n), used) >= naive_max_rainbow(reduced)


def test_deterministic():
    inst = extremal_triangles(5)
    a, b = solve_exact(inst, 4), solve_exact(inst, 4)
    assert a.to_obj() == b.to_obj()
