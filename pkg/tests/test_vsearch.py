import itertools

import pytest

from rainbowmatch import Instance, validate_instance
from rainbowmatch.errors import InfeasibleScopeError
from rainbowmatch.solvers import compute_v_exhaustive, ground_instances, kernel_instances
from rainbowmatch.solvers.vsearch import IsomorphFilter, nontrivial_partitions, set_partitions
from oracles import naive_has_rainbow

BELL_NO_SINGLETONS = [1, 0, 1, 1, 4, 11, 41, 162]


@pytest.mark.parametrize("m", range(8))
def test_set_partition_counts(m):
    assert sum(1 for _ in set_partitions(range(m))) == BELL_NO_SINGLETONS[m]


def test_nontrivial_partitions_are_all_nonsingleton_relations():
    # Bell(4) - 1 = 14 relations on 4 points other than equality
    assert len(nontrivial_partitions(range(4))) == 14
    assert len(set(nontrivial_partitions(range(5)))) == 51
    assert len(nontrivial_partitions(range(5), max_kernel=2)) == 10


def relabel_orbits(n, ground, max_kernel):
    """Orbit count by brute force: canonical form = lexicographic minimum over all relabelings."""
    parts = nontrivial_partitions(range(ground), max_kernel)
    seen = set()
    for combo in itertools.product(parts, repeat=n):
        best = min(tuple(tuple(sorted(tuple(sorted(p[x] for x in b)) for b in cls)) for cls in combo)
                   for p in itertools.permutations(range(ground)))
        seen.add(best)
    return len(seen)


@pytest.mark.parametrize("n, ground, max_kernel", [(1, 4, None), (2, 4, None), (2, 5, 4), (3, 4, 3)])
def test_ground_instances_are_orbit_representatives(n, ground, max_kernel):
    reps = list(ground_instances(n, ground, max_kernel))
    assert len(reps) == relabel_orbits(n, ground, max_kernel)
    assert all(validate_instance(r).valid for r in reps)


def test_isomorph_filter():
    f = IsomorphFilter()
    assert f.add(Instance((((0, 1),), ((1, 2),))))
    assert not f.add(Instance((((5, 7),), ((3, 5),))))
    # colours are not interchangeable
    assert f.add(Instance((((0, 1, 2),), ((1, 2),))))
    assert f.add(Instance((((1, 2),), ((0, 1, 2),))))


def test_kernel_instances_cover_every_relabeling_class():
    reps = list(kernel_instances(2, 4))
    f = IsomorphFilter()
    assert all(f.add(r) for r in reps)
    # every pair of relations on six points with kernels of size 4 hits a representative
    for a in nontrivial_partitions(range(6)):
        if sum(map(len, a)) != 4:
            continue
        for b in nontrivial_partitions(range(6)):
            if sum(map(len, b)) == 4:
                assert not f.add(Instance((a, b)))


def test_v_for_one_colour():
    assert compute_v_exhaustive(1, 3).v1 == 2


def test_v_table_two_colours():
    table = compute_v_exhaustive(2, 4)
    verdicts = {r.kernel: r.verdict for r in table.rows}
    assert verdicts[4] == "counterexample exists"
    cx = table.rows[-1].counterexample
    assert not naive_has_rainbow(cx.classes, 2)
    f = IsomorphFilter()
    f.add(Instance((((0, 1), (2, 3)), ((0, 2), (1, 3)))))
    assert not f.add(cx)


@pytest.mark.slow
def test_v_two_colours_is_five():
    table = compute_v_exhaustive(2, 5)
    assert table.rows[-1].verdict == "all-solvable" and table.v1 == 5


def test_scope_is_enforced():
    with pytest.raises(InfeasibleScopeError):
        compute_v_exhaustive(3, 6)
    with pytest.raises(InfeasibleScopeError):
        list(kernel_instances(3, 4))
