import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rainbowmatch import (Edge, Instance, Matching, RandomSpec, extremal_triangles, is_rainbow_matching,
                          random_instance, validate_instance)
from rainbowmatch.errors import InvalidMissingColourError, ParameterError, ValidationError
from rainbowmatch.solvers import (ABSENT, FOUND, SolverParams, greedy_matching, identity_violations,
                                  proof_guided_augment, solve, solve_exact, switching_augment)
from gadgets import planted
from strategies import instances
from test_core import SW3, SW3_M


def test_params_validation():
    with pytest.raises(ParameterError):
        SolverParams(delta=0)
    with pytest.raises(ParameterError):
        SolverParams(node_budget=0)
    with pytest.raises(ParameterError):
        SolverParams(seed=2**64)
    with pytest.raises(ParameterError):
        SolverParams(method="magic")
    assert SolverParams(delta="1/2").delta == Fraction(1, 2)
    assert SolverParams(delta=1).n0 == 144


def test_greedy_examples():
    inst = Instance(tuple(((2 * c, 2 * c + 1),) for c in range(5)))
    assert is_rainbow_matching(inst, greedy_matching(inst), 5)
    tri = Instance(tuple(((0, 1, 2),) for _ in range(3)))
    assert len(greedy_matching(tri, seed=7)) == 1


@settings(max_examples=200, deadline=None)
@given(instances(max_n=5, ground=10), st.integers(0, 2**64 - 1))
def test_greedy_is_rainbow(inst, seed):
    m = greedy_matching(inst, seed)
    assert is_rainbow_matching(inst, m, len(m))


def test_switching_augment_direct_edge():
    inst = Instance((((4, 5),), ((0, 1),)))
    out = switching_augment(inst, Matching((Edge(1, 0, 1),)), 0, SolverParams())
    assert out.ok and out.switching.length == 0 and out.closing == Edge(0, 4, 5)


def test_switching_augment_depth_three():
    for L in (0, 1, 2):
        assert not switching_augment(SW3, SW3_M, 0, SolverParams(max_switch_len=L)).ok
    out = switching_augment(SW3, SW3_M, 0, SolverParams(max_switch_len=3))
    assert out.ok and out.switching.length == 3 and out.closing == Edge(3, 9, 10)
    assert is_rainbow_matching(SW3, out.matching, 4)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_switching_augment_fails_on_extremal(n):
    inst = extremal_triangles(n)
    m = Matching(tuple(Edge(c, 3 * (c - 1), 3 * (c - 1) + 1) for c in range(1, n)))
    for L in range(5):
        out = switching_augment(inst, m, 0, SolverParams(max_switch_len=L))
        assert not out.ok


def test_switching_augment_rejects_present_colour():
    with pytest.raises(InvalidMissingColourError):
        switching_augment(SW3, SW3_M, 1, SolverParams())


def test_solve_examples():
    inst = Instance(tuple(((2 * c, 2 * c + 1),) for c in range(6)))
    for method in ("exact", "greedy_switch", "proof_guided"):
        out = solve(inst, SolverParams(method=method))
        assert out.found and is_rainbow_matching(inst, out.matching, 6)
    tri = Instance(tuple(((0, 1, 2),) for _ in range(4)))
    assert solve(tri, SolverParams(), 1).found
    assert not solve(tri, SolverParams(), 2).found


def test_extremal_six_exact_absence_and_heuristic_failure():
    inst = extremal_triangles(6)
    assert solve(inst, SolverParams(method="exact")).certificate == ABSENT
    out = solve(inst, SolverParams(method="greedy_switch"))
    assert not out.found and out.certificate != ABSENT
    out = solve(inst, SolverParams(method="proof_guided"))
    assert not out.found and out.certificate != ABSENT


def test_solve_rejects_invalid():
    with pytest.raises(ValidationError):
        solve(Instance((((1, 0),),)), SolverParams())


@settings(max_examples=150, deadline=None)
@given(instances(max_n=4, ground=8), st.sampled_from(["greedy_switch", "proof_guided"]), st.integers(0, 1000))
def test_heuristics_never_contradict_exact(inst, method, seed):
    for size in range(inst.n + 1):
        h = solve(inst, SolverParams(method=method, seed=seed), size)
        ex = solve_exact(inst, size)
        if h.found:
            assert is_rainbow_matching(inst, h.matching, size)
            assert ex.certificate == FOUND
        if ex.certificate == ABSENT:
            assert not h.found


@pytest.mark.parametrize("seed", range(40))
def test_random_outputs_verify(seed):
    inst = random_instance(RandomSpec(8, 16, overlap=1.0, seed=seed))
    for method in ("greedy_switch", "proof_guided"):
        out = solve(inst, SolverParams(method=method, seed=seed))
        if out.found:
            assert is_rainbow_matching(inst, out.matching, 8)
        else:
            assert out.certificate != ABSENT


def test_determinism():
    inst = random_instance(RandomSpec(12, 24, overlap=1.0, seed=3))
    for method in ("greedy_switch", "proof_guided", "exact"):
        a = solve(inst, SolverParams(method=method, seed=5))
        b = solve(inst, SolverParams(method=method, seed=5))
        assert a.to_obj() == b.to_obj()


# -- proof-guided search ------------------------------------------------------


def test_proof_guided_direct_matches_empty_switching():
    inst = Instance((((4, 5),), ((0, 1),)))
    m = Matching((Edge(1, 0, 1),))
    out, trace = proof_guided_augment(inst, m, 0, SolverParams())
    ref = switching_augment(inst, m, 0, SolverParams(max_switch_len=0))
    assert out == ref.matching and trace.levels[0].branch == "direct"


def test_proof_guided_one_step_direct():
    inst = Instance((((1, 9),), ((0, 1), (5, 6))))
    m = Matching((Edge(1, 0, 1),))
    out, trace = proof_guided_augment(inst, m, 0, SolverParams())
    assert trace.levels[0].branch == "one-step-direct"
    assert is_rainbow_matching(inst, out, 2)


@pytest.mark.parametrize("concentrated, branch", [(True, "concentrated"), (False, "spread")])
@pytest.mark.parametrize("n, delta", [(14, Fraction(1)), (10, Fraction(1, 2)), (20, Fraction(2))])
def test_planted_reduction(concentrated, branch, n, delta):
    inst, m = planted(n, concentrated)
    assert validate_instance(inst).valid
    out, trace = proof_guided_augment(inst, m, 0, SolverParams(delta=delta))
    assert out is not None and is_rainbow_matching(inst, out, n)
    top = trace.levels[0]
    assert top.branch == branch and not trace.fallback_taken
    assert len(trace.levels) == 2 and trace.levels[1].branch == "direct"
    assert len(top.C_star) == math.ceil(delta * n / 6)
    assert top.n_reduced == math.floor(n * (1 - delta / 6)) - 2
    assert top.delta_reduced * top.n_reduced >= delta * n - 12
    assert top.n_reduced + len(top.C_star) + 2 == n == top.output_size
    assert identity_violations(top) == []
    # the output is recursion result + W + the switching's out-edges
    assert set(top.W) <= set(out) and set(top.switching.out_edges) <= set(out)
    assert top.switching.length == 2


def test_planted_without_spare_falls_back():
    inst, m = planted(14, False, spare=False)
    out, trace = proof_guided_augment(inst, m, 0, SolverParams())
    assert trace.fallback_taken
    assert any(lv.fallback for lv in trace.levels)
    if out is None:
        assert solve_exact(inst).certificate == ABSENT
    else:
        assert is_rainbow_matching(inst, out, 14)


def test_fallback_is_recorded_when_witness_missing():
    inst = extremal_triangles(4)
    m = Matching(tuple(Edge(c, 3 * (c - 1), 3 * (c - 1) + 1) for c in range(1, 4)))
    out, trace = proof_guided_augment(inst, m, 0, SolverParams())
    assert out is None and trace.fallback_taken and trace.levels[0].fallback
