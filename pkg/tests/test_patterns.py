import random
from math import comb

import pytest

from conftest import random_family
from dwise.families import Family
from dwise.patterns import (
    Partition,
    check_homogeneous,
    greedy_homogenize,
    intersection_pattern,
    is_intersection_closed,
    pattern,
    pattern_level_check,
    rank,
)

STAR = Family(5, 3, [(1, a, b) for a in (2, 3) for b in (4, 5)])
STAR_PART = Partition(((1,), (2, 3), (4, 5)))
STAR_J = pattern([[1], [1, 2], [1, 3]])


def test_partition_validation():
    with pytest.raises(ValueError, match="empty"):
        Partition(((1,), ()))
    with pytest.raises(ValueError, match="overlap"):
        Partition(((1, 2), (2, 3)))


def test_intersection_pattern_examples():
    fam = Family(7, 3, [(1, 2, 5), (1, 3, 6), (1, 4, 7)])
    part = Partition(((1,), (2, 3, 4), (5, 6, 7)))
    assert intersection_pattern(fam, part, (1, 2, 5)) == pattern([[1]])
    assert intersection_pattern(STAR, STAR_PART, (1, 2, 4)) == STAR_J
    single = Family(5, 3, [(1, 2, 4)])
    assert intersection_pattern(single, STAR_PART, (1, 2, 4)) == frozenset()


def test_intersection_pattern_errors():
    bad = Family(5, 3, [(1, 2, 3)])  # 2 and 3 share a block
    with pytest.raises(ValueError, match="not a transversal"):
        intersection_pattern(bad, STAR_PART, (1, 2, 3))
    with pytest.raises(ValueError, match="not a member"):
        intersection_pattern(STAR, STAR_PART, (1, 3, 5))


def test_projection_totality():
    for e in STAR.sets:
        got = intersection_pattern(STAR, STAR_PART, e)
        assert got == STAR_J  # every edge sees the same pattern here


def test_rank_examples():
    assert rank(pattern([[]]), 3) == 1
    assert rank(STAR_J, 3) == 2
    assert rank(pattern([[1], [2], [3], [1, 2], [1, 3], [2, 3]]), 3) == 3
    assert rank(pattern([[1, 2, 3]]), 3) == 4  # sentinel: all covered
    assert rank(frozenset(), 3) == 0
    with pytest.raises(ValueError, match="leaves"):
        rank(pattern([[5]]), 3)


def test_intersection_closure():
    assert is_intersection_closed(STAR_J)
    assert not is_intersection_closed(pattern([[1, 2], [2, 3]]))


def test_check_homogeneous():
    assert check_homogeneous(STAR, STAR_PART, STAR_J, 2).ok
    rep = check_homogeneous(STAR, STAR_PART, STAR_J, 3)
    assert not rep.ok and rep.violation == ("core", (1, 2), 2)
    deviant = Family(5, 3, [(1, 2, 4), (1, 2, 5), (1, 3, 4)])
    rep = check_homogeneous(deviant, STAR_PART, STAR_J, 1)
    assert not rep.ok and rep.violation[0] == "pattern"


def test_greedy_homogenize_fixed_point():
    res = greedy_homogenize(STAR, 2)
    assert res.family == STAR
    assert res.partition.blocks == ((1,), (2, 3), (4, 5))
    assert res.pattern == STAR_J and res.level == 2


def test_greedy_homogenize_single_edge():
    res = greedy_homogenize(Family(6, 3, [(2, 4, 6)]), 3)
    assert len(res.family) == 1 and res.pattern == frozenset() and res.level == 3


def test_greedy_homogenize_postcondition():
    rng = random.Random(21)
    for _ in range(40):
        fam = random_family(rng, rng.randint(5, 10), rng.randint(2, 4), 14)
        res = greedy_homogenize(fam, rng.randint(1, 3))
        assert len(res.family) >= 1
        assert check_homogeneous(res.family, res.partition, res.pattern, res.level).ok


def _product_family(rng, n, k):
    """Fixed kernel + disjoint pools, one pool per varying coordinate."""
    r = rng.randint(0, k - 1)
    elements = list(range(1, n + 1))
    rng.shuffle(elements)
    kernel = elements[:r]
    pools = []
    idx = r
    for _ in range(k - r):
        size = rng.randint(2, 3)
        if idx + size > n:
            size = max(1, n - idx)
        pools.append(elements[idx : idx + size])
        idx += size
    if any(not p for p in pools):
        return None
    edges = [[x] for x in kernel] or [[]]
    fam_sets = []

    def grow(prefix, remaining):
        if not remaining:
            fam_sets.append(tuple(sorted(prefix)))
            return
        for x in remaining[0]:
            grow(prefix + [x], remaining[1:])

    grow(list(kernel), pools)
    blocks = [(x,) for x in kernel] + [tuple(sorted(p)) for p in pools]
    return Family(n, k, fam_sets), Partition(tuple(blocks))


def test_rank_bound_on_constructed_homogeneous_families():
    # |H| <= C(n, rank(J)) across constructed pattern-constant families
    rng = random.Random(22)
    built = 0
    while built < 100:
        n = rng.randint(6, 12)
        k = rng.randint(2, 4)
        style = built % 3
        if style == 0:
            made = _product_family(rng, n, k)
            if made is None:
                continue
            fam, part = made
        elif style == 1:
            # perfect-matching style: pairwise disjoint edges
            m = rng.randint(2, n // k)
            elements = list(range(1, n + 1))
            rng.shuffle(elements)
            fam = Family(n, k, [tuple(sorted(elements[i * k : (i + 1) * k])) for i in range(m)])
            part = Partition(tuple(tuple(sorted(e[i] for e in fam.sets)) for i in range(k)))
        else:
            # star style: one shared element, disjoint remainders
            m = rng.randint(2, max(2, (n - 1) // (k - 1)) if k > 1 else 2)
            if k == 1 or (n - 1) // (k - 1) < 2:
                continue
            m = min(m, (n - 1) // (k - 1))
            elements = list(range(2, n + 1))
            rng.shuffle(elements)
            sets = []
            for i in range(m):
                rest = elements[i * (k - 1) : (i + 1) * (k - 1)]
                sets.append(tuple(sorted([1] + rest)))
            fam = Family(n, k, sets)
            blocks = [(1,)] + [
                tuple(sorted(s[j] for s in (tuple(sorted(set(e) - {1})) for e in fam.sets)))
                for j in range(k - 1)
            ]
            part = Partition(tuple(blocks))
        j = intersection_pattern(fam, part, fam.sets[0])
        rep = check_homogeneous(fam, part, j, 1)
        assert rep.ok, (fam, part, rep)
        assert is_intersection_closed(j)
        assert len(fam) <= comb(fam.n, rank(j, fam.k)), (fam, j)
        built += 1


def test_pattern_level_check():
    assert pattern_level_check(pattern([[1, 2]]), 3, 2).ok
    rep = pattern_level_check(pattern([[1, 2], [1, 3]]), 3, 2)
    assert rep.levels_ok and not rep.unique_d_set and not rep.ok
    rep = pattern_level_check(pattern([[1]]), 3, 2)
    assert not rep.levels_ok and rep.violation == (1,)
    # full-size members are out of range too
    assert not pattern_level_check(pattern([[1, 2, 3], [1, 2]]), 3, 2).levels_ok
