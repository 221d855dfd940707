"""Ground-set arithmetic for uniform set families.

Elements are the integers 1..n.  Internally every set is a bit mask in
which bit (i-1) represents element i, so intersection, containment and
emptiness tests are single integer operations; Python integers extend the
same representation past 64 elements without a separate code path.  All
public input and output stays 1-based.

A d-wise intersecting family is one in which every subfamily of size at
most d has a common element.  The "at most" reading matters: with the
looser "exactly d distinct sets" reading, two disjoint 2-sets would
vacuously count as 3-wise intersecting.  A consequence of the convention
used here is that a family whose total intersection is empty (a
*non-trivial* family) must contain more than d sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator


def set_mask(elements: Iterable[int]) -> int:
    """Pack 1-based elements into a bit mask."""
    mask = 0
    for e in elements:
        mask |= 1 << (e - 1)
    return mask


def mask_elements(mask: int) -> tuple[int, ...]:
    """Unpack a bit mask into a sorted tuple of 1-based elements."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class Params:
    """Search/construction parameters (ground set size, uniformity, arity)."""

    n: int
    k: int
    d: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"d must be at least 2 (got d={self.d})")
        if self.k < 1:
            raise ValueError(f"k must be positive (got k={self.k})")
        if self.n < self.k:
            raise ValueError(f"n must be at least k (got n={self.n}, k={self.k})")


class Family:
    """An immutable k-uniform family of distinct subsets of [1, n].

    Members are normalized to sorted tuples and the family itself is kept
    in lexicographic order, so iteration order, equality and printed output
    are reproducible.
    """

    __slots__ = ("n", "k", "_sets", "_masks")

    def __init__(self, n: int, k: int, sets: Iterable[Iterable[int]]):
        if n < 0:
            raise ValueError(f"ground set size must be non-negative (got n={n})")
        if k < 0:
            raise ValueError(f"uniformity must be non-negative (got k={k})")
        normalized = []
        for s in sets:
            t = tuple(sorted(s))
            if len(set(t)) != len(t):
                raise ValueError(f"set {t} has repeated elements")
            if len(t) != k:
                raise ValueError(f"set {t} has {len(t)} elements, expected k={k}")
            if t and (t[0] < 1 or t[-1] > n):
                raise ValueError(f"set {t} leaves the ground set [1, {n}]")
            normalized.append(t)
        normalized.sort()
        for a, b in zip(normalized, normalized[1:]):
            if a == b:
                raise ValueError(f"duplicate set {a}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "_sets", tuple(normalized))
        object.__setattr__(self, "_masks", tuple(set_mask(t) for t in normalized))

    @classmethod
    def from_masks(cls, n: int, k: int, masks: Iterable[int]) -> "Family":
        return cls(n, k, [mask_elements(m) for m in masks])

    @property
    def sets(self) -> tuple[tuple[int, ...], ...]:
        return self._sets

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    def __len__(self) -> int:
        return len(self._sets)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self._sets)

    def __contains__(self, s) -> bool:
        return tuple(sorted(s)) in set(self._sets)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Family)
            and self.n == other.n
            and self.k == other.k
            and self._sets == other._sets
        )

    def __hash__(self) -> int:
        return hash((self.n, self.k, self._sets))

    def __setattr__(self, *args):
        raise AttributeError("Family is immutable")

    def __repr__(self) -> str:
        shown = ", ".join("{" + ",".join(map(str, s)) + "}" for s in self._sets[:6])
        more = f", ... ({len(self._sets)} sets)" if len(self._sets) > 6 else ""
        return f"Family(n={self.n}, k={self.k}, [{shown}{more}])"


# ---------------------------------------------------------------------------
# Distinct-intersection levels.
#
# Level j holds the inclusion-minimal masks among all intersections of j
# distinct members.  Minimality is safe to impose per level because any
# intersection mask is a superset of a minimal one at the same level, and
# every constraint or deeper intersection derived from the superset is
# dominated by the one derived from the subset.  A mask t at level j
# survives to level j+1 exactly when at least j+1 members contain it.
# ---------------------------------------------------------------------------


def _minimize(masks: Iterable[int]) -> list[int]:
    """Inclusion-minimal masks, sorted by (popcount, value)."""
    ordered = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in ordered:
        if not any(s & ~m == 0 for s in kept):
            kept.append(m)
    return kept


def _intersection_levels(masks: tuple[int, ...], up_to: int) -> list[list[int]]:
    """Minimal intersection masks for subfamily sizes 1..up_to."""
    if up_to < 1 or not masks:
        return []
    levels = [sorted(masks)]
    containers: dict[int, int] = {}

    def n_containers(t: int) -> int:
        if t not in containers:
            containers[t] = sum(1 for m in masks if t & ~m == 0)
        return containers[t]

    for j in range(2, up_to + 1):
        cand = set()
        for t in levels[-1]:
            for m in masks:
                u = t & m
                if u != t:
                    cand.add(u)
            if n_containers(t) >= j:
                cand.add(t)
        levels.append(_minimize(cand))
        if not levels[-1]:
            break
    return levels


def is_d_wise_intersecting(family: Family, d: int) -> bool:
    """True iff every subfamily of size at most d has a common element.

    The empty family qualifies, and so does any family of at most d sets
    whose total intersection is non-empty.
    """
    if d < 2:
        raise ValueError(f"d must be at least 2 (got d={d})")
    if len(family) == 0:
        return True
    level = min(d, len(family))
    # Intersections only shrink as subfamilies grow, so the deepest level
    # checked dominates all smaller ones.
    levels = _intersection_levels(family.masks, level)
    if len(levels) < level:
        return False
    return all(m != 0 for m in levels[level - 1])


def common_intersection(family: Family) -> tuple[int, ...]:
    """Intersection of all members; the full ground set for an empty family."""
    mask = (1 << family.n) - 1
    for m in family.masks:
        mask &= m
    return mask_elements(mask)


def is_non_trivial(family: Family) -> bool:
    return len(common_intersection(family)) == 0


def min_m_wise_intersection(family: Family, m: int) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Smallest common intersection over all m-element subfamilies.

    Returns the minimum size together with the lexicographically first
    subfamily attaining it.  The value is computed first on the distinct
    intersection masks per level (cheap), then a pruned DFS recovers the
    first witness.
    """
    if m < 2:
        raise ValueError(f"subfamily size must be at least 2 (got m={m})")
    if m > len(family):
        raise ValueError(f"subfamily size exceeds family ({m} > {len(family)})")
    levels = _intersection_levels(family.masks, m)
    value = min(t.bit_count() for t in levels[m - 1])
    witness = _first_subfamily_with_intersection(family.masks, m, value, (1 << family.n) - 1)
    assert witness is not None
    return value, tuple(family.sets[i] for i in witness)


def _first_subfamily_with_intersection(
    masks: tuple[int, ...], m: int, target: int, full: int
) -> tuple[int, ...] | None:
    """Lexicographically first index m-tuple whose intersection has popcount target."""
    nsets = len(masks)

    def rec(start: int, chosen: list[int], running: int) -> tuple[int, ...] | None:
        need = m - len(chosen)
        if need == 0:
            return tuple(chosen) if running.bit_count() == target else None
        if nsets - start < need:
            return None
        size = running.bit_count()
        if size < target:
            return None
        if size == target:
            # Only members containing the running intersection keep it intact.
            picks = []
            for i in range(start, nsets):
                if running & ~masks[i] == 0:
                    picks.append(i)
                    if len(picks) == need:
                        return tuple(chosen + picks)
            return None
        # Even removing the largest possible chunks cannot reach the target.
        kills = sorted((running & ~masks[i]).bit_count() for i in range(start, nsets))
        if size - sum(kills[-need:]) > target:
            return None
        for i in range(start, nsets - need + 1):
            got = rec(i + 1, chosen + [i], running & masks[i])
            if got is not None:
                return got
        return None

    return rec(0, [], full)


def link(family: Family, x: Iterable[int]) -> Family:
    """The family {E \\ X : X subset of E in F} on the same ground set."""
    xs = tuple(sorted(set(x)))
    if xs and (xs[0] < 1 or xs[-1] > family.n):
        raise ValueError(f"link set {xs} leaves the ground set [1, {family.n}]")
    xm = set_mask(xs)
    petals = [m & ~xm for m in family.masks if xm & ~m == 0]
    return Family.from_masks(family.n, family.k - len(xs), petals)


def element_degrees(family: Family) -> tuple[int, ...]:
    """Degree of each element 1..n (number of member sets containing it)."""
    degs = [0] * family.n
    for m in family.masks:
        while m:
            low = m & -m
            degs[low.bit_length() - 1] += 1
            m ^= low
    return tuple(degs)


def min_degree(family: Family) -> tuple[int, int]:
    """(element, degree) with the fewest containing sets, smallest element on ties."""
    if len(family) == 0:
        raise ValueError("minimum degree of an empty family is undefined")
    degs = element_degrees(family)
    d = min(degs)
    return degs.index(d) + 1, d


def trace_classes(family: Family, a: Iterable[int]) -> dict[tuple[int, ...], Family]:
    """Partition of the family by the exact intersection with ``a``.

    trace_classes(F, A)[X] holds every member E with E & A == X, as a
    subfamily; the sizes sum to |F|.
    """
    am = set_mask(a)
    buckets: dict[int, list[int]] = {}
    for m in family.masks:
        buckets.setdefault(m & am, []).append(m)
    return {
        mask_elements(x): Family.from_masks(family.n, family.k, ms)
        for x, ms in buckets.items()
    }


def all_ksets(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of [1, n] in lexicographic order."""
    return list(combinations(range(1, n + 1), k))
