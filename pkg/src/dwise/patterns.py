"""k-partite projections, intersection patterns, rank, and homogeneity.

A partition assigns ground elements to k indexed blocks (it need not
cover the ground set).  An edge is a transversal when it takes exactly
one element from every block.  The projection of a set g is the set of
block indices g touches, and the intersection pattern of an edge e is
the collection of projections of its traces f & e over the other edges
f.  The self-trace is excluded: including it would force the full index
set [k] into every pattern.

A family is (s, J)-homogeneous w.r.t. a partition when every edge has
pattern J and every trace set has core degree at least s in the family.
greedy_homogenize extracts such a subfamily by majority-pattern pruning;
it makes no size guarantee, only that its output passes
check_homogeneous at the level it reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .families import Family, mask_elements, set_mask
from .sunflowers import core_degree

Pattern = frozenset  # of frozensets of block indices


@dataclass(frozen=True)
class Partition:
    """Indexed pairwise-disjoint nonempty blocks of ground elements."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = 0
        for i, b in enumerate(self.blocks, start=1):
            if not b:
                raise ValueError(f"block {i} is empty")
            if any(e < 1 for e in b):
                raise ValueError(f"block {i} holds a non-positive element")
            bm = set_mask(b)
            if bm & seen:
                raise ValueError(f"block {i} overlaps an earlier block")
            seen |= bm
        object.__setattr__(self, "_masks", tuple(set_mask(b) for b in self.blocks))

    @property
    def k(self) -> int:
        return len(self.blocks)

    def masks(self) -> tuple[int, ...]:
        return self._masks

    def project(self, elements_mask: int) -> frozenset[int]:
        return frozenset(
            i for i, bm in enumerate(self._masks, start=1) if elements_mask & bm
        )


def pattern(members: Iterable[Iterable[int]]) -> Pattern:
    """Convenience constructor for a pattern from index collections."""
    return frozenset(frozenset(m) for m in members)


def _check_transversal(family: Family, partition: Partition) -> None:
    if partition.k != family.k:
        raise ValueError(
            f"partition has {partition.k} blocks but the family is {family.k}-uniform"
        )
    for s, m in zip(family.sets, family.masks):
        for i, bm in enumerate(partition.masks(), start=1):
            hits = (m & bm).bit_count()
            if hits != 1:
                raise ValueError(
                    f"edge {s} is not a transversal: block {i} holds {hits} of its elements"
                )


def intersection_pattern(family: Family, partition: Partition, edge: Iterable[int]) -> Pattern:
    """Projections of the traces of ``edge`` over all other edges."""
    e = tuple(sorted(edge))
    if e not in family:
        raise ValueError(f"edge {e} is not a member of the family")
    _check_transversal(family, partition)
    em = set_mask(e)
    return frozenset(partition.project(m & em) for m in family.masks if m != em)


def rank(j: Pattern, k: int) -> int:
    """Smallest size of a subset of [1, k] contained in no pattern member.

    Returns k+1 when every subset of [1, k] is covered, so comparisons
    downstream stay total.
    """
    members = [frozenset(m) for m in j]
    for m in members:
        if any(i < 1 or i > k for i in m):
            raise ValueError(f"pattern member {sorted(m)} leaves [1, {k}]")
    for size in range(0, k + 1):
        for e in combinations(range(1, k + 1), size):
            es = frozenset(e)
            if not any(es <= m for m in members):
                return size
    return k + 1


def is_intersection_closed(j: Pattern) -> bool:
    members = [frozenset(m) for m in j]
    return all(a & b in j for a, b in combinations(members, 2))


@dataclass(frozen=True)
class HomogeneityReport:
    ok: bool
    # ('pattern', edge, got) when some edge deviates from J,
    # ('core', trace, degree) when some trace has core degree below s.
    violation: tuple | None = None


def check_homogeneous(
    family: Family, partition: Partition, j: Pattern, s: int
) -> HomogeneityReport:
    """Verify every edge has pattern j and every trace has core degree >= s."""
    _check_transversal(family, partition)
    want = frozenset(frozenset(m) for m in j)
    for e in family.sets:
        got = intersection_pattern(family, partition, e)
        if got != want:
            return HomogeneityReport(False, ("pattern", e, got))
    checked: set[int] = set()
    for em in family.masks:
        for fm in family.masks:
            if fm == em:
                continue
            t = fm & em
            if t in checked:
                continue
            checked.add(t)
            deg = core_degree(family, mask_elements(t), cap=s)
            if deg < s:
                return HomogeneityReport(False, ("core", mask_elements(t), deg))
    return HomogeneityReport(True)


@dataclass(frozen=True)
class HomogenizeResult:
    family: Family
    partition: Partition
    pattern: Pattern
    level: int  # largest s' <= requested s the output satisfies


def _induced_partition(family: Family) -> Partition:
    """Blocks seeded by the first edge, other elements placed greedily.

    Scanning edges in canonical order, each still-unassigned element of an
    edge goes to the lowest-indexed block the edge does not yet touch, so
    every edge that can stay a transversal does.  Elements that never fit
    stay outside all blocks (edges containing them are dropped later).
    """
    first = family.sets[0]
    blocks: list[list[int]] = [[e] for e in first]
    where = {e: i for i, e in enumerate(first)}
    for s in family.sets[1:]:
        used = {where[e] for e in s if e in where}
        if len(used) != len([e for e in s if e in where]):
            continue  # two elements already share a block; edge is lost anyway
        free = [i for i in range(len(blocks)) if i not in used]
        for e in s:
            if e in where:
                continue
            if not free:
                break
            i = free.pop(0)
            blocks[i].append(e)
            where[e] = i
    return Partition(tuple(tuple(sorted(b)) for b in blocks))


def greedy_homogenize(family: Family, s: int) -> HomogenizeResult:
    """Extract a subfamily on which the intersection pattern is constant.

    The partition is induced by the first edge; non-transversal edges are
    dropped, then the largest same-pattern bucket is kept repeatedly until
    the pattern is stable.  The reported level is the largest s' <= s that
    check_homogeneous confirms on the output.
    """
    if len(family) == 0:
        raise ValueError("cannot homogenize an empty family")
    partition = _induced_partition(family)
    pmasks = partition.masks()

    def transversal(m: int) -> bool:
        return all((m & bm).bit_count() == 1 for bm in pmasks)

    kept = [m for m in family.masks if transversal(m)]
    while True:
        if len(kept) <= 1:
            break
        buckets: dict[Pattern, list[int]] = {}
        for em in kept:
            pat = frozenset(
                partition.project(fm & em) for fm in kept if fm != em
            )
            buckets.setdefault(pat, []).append(em)
        # Deterministic choice: biggest bucket, ties by canonical pattern key.
        def bucket_key(item):
            pat, ms = item
            canon = tuple(sorted(tuple(sorted(p)) for p in pat))
            return (-len(ms), canon)

        pat, members = min(buckets.items(), key=bucket_key)
        if len(buckets) == 1:
            break
        kept = members

    sub = Family.from_masks(family.n, family.k, kept)
    if len(sub) <= 1:
        j: Pattern = frozenset()
        level = s
    else:
        j = intersection_pattern(sub, partition, sub.sets[0])
        level = s
        while level > 0 and not check_homogeneous(sub, partition, j, level).ok:
            level -= 1
    return HomogenizeResult(sub, partition, j, level)


@dataclass(frozen=True)
class PatternLevelReport:
    levels_ok: bool
    unique_d_set: bool
    ok: bool
    violation: tuple[int, ...] | None = None


def pattern_level_check(j: Pattern, k: int, d: int) -> PatternLevelReport:
    """Structural test: members sized within [d, k-1], exactly one d-sized.

    This is the shape a constant intersection pattern must take for a
    large family in which every d members share a point; it is a pure
    predicate on the pattern and assumes nothing about the ground set.
    """
    members = [tuple(sorted(m)) for m in j]
    bad = next((m for m in members if not d <= len(m) <= k - 1), None)
    levels_ok = bad is None
    unique = sum(1 for m in members if len(m) == d) == 1
    return PatternLevelReport(levels_ok, unique, levels_ok and unique, bad)
