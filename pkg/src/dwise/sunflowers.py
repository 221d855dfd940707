"""Sunflowers, core degrees, and d-sets of large core degree.

A sunflower with core X inside a k-uniform family is a set of members that
pairwise intersect exactly in X; the parts outside X (the petals) are
pairwise disjoint.  The core degree of X is the largest number of petals
available, i.e. the matching number of the link of X, computed here by
exact branch-and-bound set packing.  A petal may be empty (when X itself
is a member), and an empty petal is disjoint from everything.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .families import Family, mask_elements, set_mask


@dataclass(frozen=True)
class DeltaSystem:
    """A core plus pairwise-disjoint petals, each core+petal of size k."""

    k: int
    core: tuple[int, ...]
    petals: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cm = set_mask(self.core)
        seen = 0
        for p in self.petals:
            pm = set_mask(p)
            if pm & cm:
                raise ValueError(f"petal {p} meets the core {self.core}")
            if pm & seen:
                raise ValueError(f"petal {p} meets an earlier petal")
            if len(self.core) + len(p) != self.k:
                raise ValueError(f"core+petal size {len(self.core)+len(p)} != k={self.k}")
            seen |= pm

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        core = set(self.core)
        return tuple(tuple(sorted(core | set(p))) for p in self.petals)


def _max_packing(petals: list[int], cap: int | None) -> tuple[int, list[int]]:
    """Exact maximum number of pairwise-disjoint petal masks, with a witness.

    Branch on the first remaining petal (take it / skip it); the upper
    bound at each node is the count of remaining petals, tightened by the
    number of free elements divided by the petal size.  With ``cap`` the
    search stops as soon as cap petals are packed.
    """
    petals = sorted(set(petals), key=lambda m: (mask_elements(m)))
    best: list[int] = []
    # An empty petal conflicts with nothing; pack it up front.
    base: list[int] = []
    if petals and petals[0] == 0:
        # sorted by element tuple puts the empty mask first
        base = [0]
        petals = petals[1:]
    if not petals:
        return len(base), base
    size = petals[0].bit_count()

    target = None if cap is None else max(cap - len(base), 0)

    def rec(avail: list[int], chosen: list[int]):
        nonlocal best
        if len(chosen) > len(best):
            best = chosen.copy()
        if target is not None and len(best) >= target:
            return
        if not avail:
            return
        free = 0
        for m in avail:
            free |= m
        bound = len(chosen) + min(len(avail), free.bit_count() // size)
        if bound <= len(best):
            return
        head, rest = avail[0], avail[1:]
        rec([m for m in rest if not m & head], chosen + [head])
        if target is not None and len(best) >= target:
            return
        # Skipping is only useful while enough petals remain.
        if len(chosen) + len(rest) > len(best):
            rec(rest, chosen)

    rec(petals, [])
    packed = base + best
    if cap is not None and len(packed) > cap:
        packed = packed[:cap]
    return len(packed), packed


def core_degree(family: Family, x: Iterable[int], cap: int | None = None) -> int:
    """Largest s such that the family holds a sunflower with core exactly x.

    Equals the matching number of the link of x.  With ``cap`` the search
    exits early once cap petals are found, returning min(true value, cap).
    """
    size, _ = core_degree_witness(family, x, cap)
    return size


def core_degree_witness(
    family: Family, x: Iterable[int], cap: int | None = None
) -> tuple[int, DeltaSystem]:
    """core_degree plus one maximum sunflower as a re-checkable witness."""
    xs = tuple(sorted(set(x)))
    if len(xs) > family.k:
        raise ValueError(f"core {xs} is larger than the uniformity k={family.k}")
    if xs and (xs[0] < 1 or xs[-1] > family.n):
        raise ValueError(f"core {xs} leaves the ground set [1, {family.n}]")
    xm = set_mask(xs)
    petals = [m & ~xm for m in family.masks if xm & ~m == 0]
    size, packed = _max_packing(petals, cap)
    return size, DeltaSystem(family.k, xs, tuple(mask_elements(p) for p in packed))


@dataclass(frozen=True)
class SdSet:
    """The d-sets whose core degree reaches the threshold tau."""

    d: int
    tau: int
    members: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def large_core_sets(family: Family, d: int, tau: int | None = None) -> SdSet:
    """All d-subsets of the ground set with core degree at least tau.

    tau defaults to k.  Only d-sets contained in at least tau members can
    qualify, so candidates are harvested from the members themselves.
    """
    if tau is None:
        tau = family.k
    if d > family.k:
        raise ValueError(f"d={d} exceeds the uniformity k={family.k}")
    if tau < 1:
        raise ValueError(f"threshold tau must be positive (got {tau})")
    counts: dict[tuple[int, ...], int] = {}
    for s in family.sets:
        for sub in combinations(s, d):
            counts[sub] = counts.get(sub, 0) + 1
    members = [
        sub
        for sub, cnt in sorted(counts.items())
        if cnt >= tau and core_degree(family, sub, cap=tau) >= tau
    ]
    return SdSet(d, tau, tuple(members))


@dataclass(frozen=True)
class DsetClassification:
    """Shape of a pairwise (d-1)-intersecting family of d-sets.

    kind is one of 'star', 'complete', 'both', 'not_intersecting'.  A star
    fits {D in [k+1] choose d : kernel in D} after relabeling (kernel of
    size d-1, one extra point per member inside a window of size k-d+2);
    a complete family fits the full d-uniform family on d+1 points.  The
    relabeling witness maps original elements onto an initial segment.
    """

    kind: str
    kernel: tuple[int, ...] | None = None
    window: tuple[int, ...] | None = None
    vertices: tuple[int, ...] | None = None
    relabeling: tuple[tuple[int, int], ...] | None = None
    violating_pair: tuple[tuple[int, ...], tuple[int, ...]] | None = None


def classify_intersecting_dsets(
    dsets: Iterable[tuple[int, ...]], k: int, d: int
) -> DsetClassification:
    """Decide which reference shape a family of d-sets embeds into.

    Checks the pairwise (d-1)-intersection property first and reports a
    violating pair if it fails.  Otherwise the family is a sub-star
    (common kernel of d-1 points) or lives on at most d+1 points; 'both'
    is reported when the two embeddings coexist (always for at most two
    members).  Families that are stars on more than k+1 points fit
    neither shape and are rejected.
    """
    members = sorted(tuple(sorted(s)) for s in dsets)
    if not members:
        raise ValueError("cannot classify an empty collection")
    for s in members:
        if len(set(s)) != d:
            raise ValueError(f"member {s} is not a d-set (d={d})")
    for a, b in combinations(members, 2):
        if len(set(a) & set(b)) < d - 1:
            return DsetClassification("not_intersecting", violating_pair=(a, b))

    union = sorted(set().union(*map(set, members)))
    common = set(members[0])
    for s in members[1:]:
        common &= set(s)

    star_kernel = None
    if len(members) == 1:
        star_kernel = members[0][: d - 1]
    elif len(common) >= d - 1:
        star_kernel = tuple(sorted(common))[: d - 1]
    star_ok = star_kernel is not None and len(members) <= k - d + 2
    complete_ok = len(union) <= d + 1

    if star_ok:
        extras = sorted(set(union) - set(star_kernel))
        relabel = {e: i + 1 for i, e in enumerate(star_kernel)}
        for j, e in enumerate(extras):
            relabel[e] = d - 1 + j + 1
        window = tuple(range(d, d + len(extras)))
        star_witness = tuple(sorted(relabel.items()))
    if complete_ok:
        complete_witness = tuple((e, i + 1) for i, e in enumerate(union))

    if star_ok and complete_ok:
        return DsetClassification(
            "both",
            kernel=star_kernel,
            window=window,
            vertices=tuple(union),
            relabeling=star_witness,
        )
    if star_ok:
        return DsetClassification(
            "star", kernel=star_kernel, window=window, relabeling=star_witness
        )
    if complete_ok:
        return DsetClassification(
            "complete", vertices=tuple(union), relabeling=complete_witness
        )
    raise ValueError(
        "pairwise (d-1)-intersecting d-sets spanning more than k+1 points: "
        f"a star with {len(members)} members does not fit a window of size {k - d + 2}"
    )
