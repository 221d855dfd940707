import random
from itertools import combinations

import pytest

from conftest import brute_core_degree, random_family
from dwise.constructions import generate
from dwise.families import Family, all_ksets, is_d_wise_intersecting, is_non_trivial
from dwise.sunflowers import (
    DeltaSystem,
    classify_intersecting_dsets,
    core_degree,
    core_degree_witness,
    large_core_sets,
)


def test_core_degree_examples():
    fam = Family(5, 3, [(1, 2, 3), (1, 2, 4), (1, 2, 5)])
    assert core_degree(fam, (1, 2)) == 3
    assert core_degree(generate("H", 7, 4, 3), (1, 2, 6)) == 3
    assert core_degree(generate("A", 7, 4, 3), (1, 2, 3)) == 4


def test_core_degree_cap_and_errors():
    fam = Family(5, 3, [(1, 2, 3), (1, 2, 4), (1, 2, 5)])
    assert core_degree(fam, (1, 2), cap=2) == 2
    assert core_degree(fam, (1, 2), cap=10) == 3
    with pytest.raises(ValueError, match="larger than the uniformity"):
        core_degree(fam, (1, 2, 3, 4))
    with pytest.raises(ValueError, match="ground set"):
        core_degree(fam, (9,))


def test_empty_core_is_a_matching():
    assert core_degree(Family(6, 2, [(1, 2), (3, 4), (5, 6)]), ()) == 3
    assert core_degree(Family(5, 3, [(1, 2, 3), (1, 2, 4)]), ()) == 1


def test_member_core_has_empty_petal():
    fam = Family(5, 3, [(1, 2, 3), (1, 2, 4)])
    value, delta = core_degree_witness(fam, (1, 2, 3))
    assert value == 1 and delta.petals == ((),)
    assert delta.edges == ((1, 2, 3),)


def test_witness_rechecks():
    rng = random.Random(11)
    for _ in range(30):
        fam = random_family(rng, rng.randint(4, 9), rng.randint(2, 4), 14)
        base = rng.choice(fam.sets)
        x = tuple(sorted(rng.sample(base, rng.randint(0, len(base)))))
        value, delta = core_degree_witness(fam, x)
        assert len(delta.petals) == value
        assert set(delta.edges) <= set(fam.sets)
        DeltaSystem(fam.k, delta.core, delta.petals)  # invariants re-validated


def test_core_degree_against_bruteforce():
    rng = random.Random(12)
    for _ in range(120):
        fam = random_family(rng, rng.randint(4, 10), rng.randint(2, 4), 18)
        base = rng.choice(fam.sets)
        for size in range(0, fam.k + 1):
            x = tuple(sorted(rng.sample(base, min(size, len(base)))))
            assert core_degree(fam, x) == brute_core_degree(fam, x)


def test_small_core_bound_on_valid_families():
    # cores smaller than d-1 admit at most one petal in a non-trivial
    # d-wise intersecting family
    for kind, n, k, d in [("H", 9, 4, 3), ("A", 9, 4, 3), ("B", 12, 5, 4),
                          ("A", 10, 5, 4), ("H", 11, 6, 5)]:
        fam = generate(kind, n, k, d)
        assert is_non_trivial(fam) and is_d_wise_intersecting(fam, d)
        rng = random.Random(13)
        for _ in range(12):
            size = rng.randint(0, d - 2)
            x = tuple(sorted(rng.sample(range(1, n + 1), size)))
            assert core_degree(fam, x, cap=2) <= 1, (kind, x)


def test_large_core_sets_displays():
    sd = large_core_sets(generate("A", 7, 4, 3), 3, 4)
    assert sd.members == tuple(all_ksets(4, 3))
    sd = large_core_sets(generate("H", 7, 4, 3), 3, 4)
    assert sd.members == ((1, 2, 3), (1, 2, 4), (1, 2, 5))
    sd = large_core_sets(generate("K", 4, 3), 2, 3)
    assert sd.members == ()


def test_large_core_sets_default_tau_and_monotonicity():
    fam = generate("A", 7, 4, 3)
    assert large_core_sets(fam, 3).members == large_core_sets(fam, 3, 4).members
    prev = None
    for tau in (1, 2, 3, 4, 5):
        cur = set(large_core_sets(fam, 3, tau).members)
        if prev is not None:
            assert cur <= prev  # shrinks as tau grows
        prev = cur


def test_core_degree_monotone_under_adding_sets():
    rng = random.Random(14)
    for _ in range(25):
        fam = random_family(rng, 8, 3, 14)
        if len(fam) < 3:
            continue
        sub = Family(8, 3, rng.sample(fam.sets, len(fam) - 2))
        base = rng.choice(sub.sets)
        x = tuple(sorted(rng.sample(base, rng.randint(0, 2))))
        assert core_degree(sub, x) <= core_degree(fam, x)


def test_classify_examples():
    c = classify_intersecting_dsets([(1, 2, 3), (1, 2, 4), (1, 2, 5)], 4, 3)
    assert c.kind == "star" and c.kernel == (1, 2) and c.window == (3, 4, 5)
    c = classify_intersecting_dsets(all_ksets(4, 3), 4, 3)
    assert c.kind == "complete" and c.vertices == (1, 2, 3, 4)
    c = classify_intersecting_dsets([(1, 2), (3, 4)], 3, 2)
    assert c.kind == "not_intersecting" and c.violating_pair == ((1, 2), (3, 4))
    c = classify_intersecting_dsets([(1, 2, 3), (1, 2, 4)], 4, 3)
    assert c.kind == "both"
    c = classify_intersecting_dsets([(2, 5, 9)], 4, 3)
    assert c.kind == "both"


def test_classify_relabeling_witness():
    c = classify_intersecting_dsets([(3, 5, 7), (3, 5, 9), (3, 5, 11)], 4, 3)
    assert c.kind == "star"
    relabel = dict(c.relabeling)
    mapped = sorted(tuple(sorted(relabel[e] for e in s)) for s in [(3, 5, 7), (3, 5, 9), (3, 5, 11)])
    # star on kernel [1, 2] with extras in the window
    assert all(m[:2] == (1, 2) for m in mapped)
    assert all(3 <= m[2] <= 5 for m in mapped)


def test_classify_star_too_wide_is_rejected():
    with pytest.raises(ValueError, match="k\\+1"):
        classify_intersecting_dsets([(1, 2, x) for x in range(3, 9)], 4, 3)


def test_classify_errors():
    with pytest.raises(ValueError, match="not a d-set"):
        classify_intersecting_dsets([(1, 2)], 4, 3)
    with pytest.raises(ValueError, match="empty"):
        classify_intersecting_dsets([], 4, 3)


def test_large_core_sets_of_valid_families_pairwise_near_equal():
    # d >= 3: any two large-core d-sets share at least d-1 points
    for kind, n, k, d in [("H", 10, 4, 3), ("A", 9, 4, 3), ("B", 11, 5, 3)]:
        fam = generate(kind, n, k, d)
        sd = large_core_sets(fam, d, k)
        for a, b in combinations(sd.members, 2):
            assert len(set(a) & set(b)) >= d - 1
