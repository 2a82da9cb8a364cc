"""Brute-force oracles, deliberately independent of the package's search code."""
import itertools


def all_edges(cliques, colour):
    return [(colour, a, b) for k in cliques for a, b in itertools.combinations(sorted(k), 2)]


def naive_has_rainbow(classes, size):
    """Try every colour subset of the given size and every choice of one edge per colour."""
    if size == 0:
        return True
    edges = [all_edges(cls, c) for c, cls in enumerate(classes)]
    for cols in itertools.combinations(range(len(classes)), size):
        for pick in itertools.product(*(edges[c] for c in cols)):
            verts = [x for _, a, b in pick for x in (a, b)]
            if len(set(verts)) == len(verts):
                return True
    return False


def naive_max_rainbow(classes):
    best = 0
    for s in range(1, len(classes) + 1):
        if naive_has_rainbow(classes, s):
            best = s
        else:
            break
    return best


def brute_max_matching(pairs):
    """Largest set of pairwise disjoint pairs, by exhaustive subset search."""
    pairs = list(pairs)
    top = min(len(pairs), len({x for p in pairs for x in p}) // 2)
    for r in range(top, 0, -1):
        for sub in itertools.combinations(pairs, r):
            verts = [x for p in sub for x in p]
            if len(set(verts)) == len(verts):
                return r
    return 0


def brute_clique_disjoint_edges(clique, from_, to):
    pairs = [(a, b) for a, b in itertools.combinations(sorted(clique), 2)
             if (a in from_ and b in to) or (b in from_ and a in to)]
    return brute_max_matching(pairs)
