import pytest

from dwise.constructions import (
    closed_size,
    compare_extremal_sizes,
    generate,
    threshold_n0,
)
from dwise.families import (
    common_intersection,
    is_d_wise_intersecting,
    min_m_wise_intersection,
)


def test_generate_examples():
    a = generate("A", 7, 3, 2)
    assert len(a) == 13 and (1, 2, 3) in a and (2, 3, 7) in a
    h = generate("H", 7, 3, 2)
    assert len(h) == 13 and (2, 3, 4) in h
    for j in (2, 3, 4):
        for x in range(2, 8):
            if x != j:
                assert tuple(sorted((1, j, x))) in h
    k = generate("K", 4, 3)
    assert k.sets == ((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4))


def test_generate_preconditions():
    with pytest.raises(ValueError, match="n >= 4"):
        generate("H", 3, 3, 2)
    with pytest.raises(ValueError, match="2 <= d <= k"):
        generate("A", 9, 3, 4)
    with pytest.raises(ValueError, match="2 <= d <= k"):
        generate("B", 9, 3, 1)
    with pytest.raises(ValueError, match="unknown kind"):
        generate("X", 9, 3, 2)
    with pytest.raises(ValueError, match="n >= k\\+1"):
        generate("K", 3, 3)


def test_closed_size_examples():
    assert closed_size("A", 7, 3, 2) == 13
    assert closed_size("H", 12, 4, 2) == 131
    assert closed_size("B", 7, 3, 2) == 13
    assert closed_size("K", 9, 4) == 5


def test_sizes_match_enumeration_on_grid():
    for k in range(2, 7):
        for d in range(2, k + 1):
            for n in range(k + 1, 14):
                for kind in ("H", "A", "B", "K"):
                    try:
                        fam = generate(kind, n, k, d)
                    except ValueError:
                        continue
                    assert len(fam) == closed_size(kind, n, k, d), (kind, n, k, d)


def test_validity_on_grid():
    # H and A are valid whenever defined; B needs d < k (at d = k every
    # member of B contains element k, so B(k, k) is a star)
    for k in range(2, 7):
        for d in range(2, k + 1):
            for n in range(k + 2, 14):
                for kind in ("H", "A"):
                    fam = generate(kind, n, k, d)
                    assert is_d_wise_intersecting(fam, d), (kind, n, k, d)
                    assert common_intersection(fam) == (), (kind, n, k, d)
                if d < k:
                    fam = generate("B", n, k, d)
                    assert is_d_wise_intersecting(fam, d), ("B", n, k, d)
                    assert common_intersection(fam) == (), ("B", n, k, d)


def test_b_at_d_equals_k_is_a_star():
    # regression for the boundary: the mixed kernel family degenerates
    for k in (3, 4, 5):
        fam = generate("B", k + 3, k, k)
        assert common_intersection(fam) == (k,)
        assert is_d_wise_intersecting(fam, k)


def test_m_wise_floor_on_valid_constructions():
    for kind, n, k, d in [("H", 11, 5, 3), ("A", 11, 5, 3), ("B", 11, 5, 3)]:
        fam = generate(kind, n, k, d)
        for m in range(2, d + 1):
            assert min_m_wise_intersection(fam, m)[0] >= d - m + 1


def test_chain_when_2d_below_k():
    # A <= B <= H for 2d < k once n >= 3k; sizes by formula, one point
    # cross-checked by enumeration
    for k, d in [(5, 2), (6, 2)]:
        for n in range(3 * k, 3 * k + 8):
            sizes = {kind: closed_size(kind, n, k, d) for kind in ("A", "B", "H")}
            assert sizes["A"] <= sizes["B"] <= sizes["H"], (k, d, n, sizes)
    n = 15
    assert closed_size("A", n, 5, 2) == len(generate("A", n, 5, 2)) == 726
    assert closed_size("B", n, 5, 2) == len(generate("B", n, 5, 2)) == 801
    assert closed_size("H", n, 5, 2) == len(generate("H", n, 5, 2)) == 876


def test_compare_extremal_sizes():
    c = compare_extremal_sizes(12, 4, 3)
    assert c.sizes["A"] == 33 and c.sizes["H"] == 26
    assert c.predicate_2d_ge_k_plus_1 and c.consistent
    c = compare_extremal_sizes(12, 4, 2)
    assert c.sizes["A"] == 117 and c.sizes["H"] == 131
    assert not c.predicate_2d_ge_k_plus_1 and c.consistent
    c = compare_extremal_sizes(9, 3, 2)
    assert c.sizes["A"] == c.sizes["H"] == 19 and c.consistent
    with pytest.raises(ValueError, match="2 <= d < k"):
        compare_extremal_sizes(12, 4, 4)
    with pytest.raises(ValueError, match="3k"):
        compare_extremal_sizes(11, 4, 2)


def test_threshold_n0():
    import mpmath

    assert threshold_n0(3, 3) == 3
    for k, d in [(3, 2), (4, 2), (4, 3), (5, 2)]:
        base = (k * k * 2**k) ** (2**k)
        mpmath.mp.dps = len(str(base)) + 30  # the oracle needs every digit
        expected = d + int(mpmath.ceil(mpmath.e * base)) * (k - d)
        assert threshold_n0(k, d) == expected, (k, d)
    assert threshold_n0(4, 2) > threshold_n0(3, 2)
    assert threshold_n0(3, 2) == 2 + 1963154380165997
