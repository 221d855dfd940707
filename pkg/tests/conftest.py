"""Shared brute-force oracles and generators for the test suite.

The oracles here deliberately avoid the library's own algorithms: d-wise
intersection is checked by enumerating subfamilies, and maximum petal
packings go through networkx's exact max-weight clique on the
disjointness graph.
"""

import random
from itertools import combinations

import networkx as nx

from dwise.families import Family, all_ksets, set_mask


def brute_is_d_wise(family: Family, d: int) -> bool:
    members = family.masks
    size = min(d, len(members))
    for sub in combinations(members, size):
        inter = (1 << family.n) - 1
        for m in sub:
            inter &= m
        if inter == 0:
            return False
    return True


def brute_min_m_wise(family: Family, m: int):
    best = None
    for sub in combinations(range(len(family)), m):
        inter = (1 << family.n) - 1
        for i in sub:
            inter &= family.masks[i]
        size = inter.bit_count()
        if best is None or size < best[0]:
            best = (size, sub)
    return best


def brute_core_degree(family: Family, core) -> int:
    """Maximum petal packing via exact max clique on the disjointness graph."""
    cm = set_mask(core)
    petals = sorted({m & ~cm for m in family.masks if cm & ~m == 0})
    if not petals:
        return 0
    g = nx.Graph()
    g.add_nodes_from(range(len(petals)))
    for i, j in combinations(range(len(petals)), 2):
        if petals[i] & petals[j] == 0:
            g.add_edge(i, j)
    clique, _ = nx.max_weight_clique(g, weight=None)
    return len(clique)


def random_family(rng: random.Random, n: int, k: int, max_sets: int) -> Family:
    pool = all_ksets(n, k)
    m = rng.randint(1, min(max_sets, len(pool)))
    return Family(n, k, rng.sample(pool, m))


def relabel(family: Family, perm: list[int]) -> Family:
    """Apply a permutation given as perm[i-1] = image of element i."""
    return Family(
        family.n, family.k, [tuple(sorted(perm[e - 1] for e in s)) for s in family]
    )


def random_permutation(rng: random.Random, n: int) -> list[int]:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return perm
