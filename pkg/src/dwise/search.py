"""Exact maximum search for non-trivial d-wise intersecting families,
canonical forms under ground-set relabeling, and saturation.

Search state.  Candidates are the k-subsets of [1, n] in lexicographic
order; a live candidate set is one bitmap integer.  For the d-wise
property the state keeps, per subfamily size j < d, the inclusion-minimal
intersections of j chosen members; a candidate E is admissible when
|t & E| >= d - j for every stored level-j trace t.  The threshold is
stronger than plain non-emptiness, which is valid because any counted
solution is non-trivial: inside a non-trivial d-wise intersecting family,
every j members share at least d - j + 1 points, so a candidate breaking
the floor can never appear in a solution together with the current
members.  For d = 2 the traces are the members themselves and
admissibility is exactly the precomputed pairwise-compatibility bitmap.

Symmetry reduction.  Up to relabeling, the lexicographically smallest
member of a solution is [1, k] and the second member is minimal in its
orbit under the stabilizer of [1, k]; that orbit is determined by how
many elements the second member shares with [1, k].  Members beyond the
second are unrestricted and solutions are deduplicated by canonical form.

Non-triviality.  A branch whose running common intersection keeps some
element present in every remaining candidate can only reach families with
a common point and is cut.

Determinism.  Top-level branches never share incumbent bounds (each
starts from the best verified construction size), so node counts and
reports are identical for any worker count.  Wall-clock budget expiry is
the only nondeterministic path and is reported via exhausted=False.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from . import constructions
from .families import Family, is_d_wise_intersecting, is_non_trivial, set_mask

DEFAULT_NODE_BUDGET = 10**8
DEFAULT_TIME_BUDGET = 300.0
MAX_SEARCH_WIDTH = 64


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm:
    """Relabeling-invariant fingerprint of a family.

    ``encoding`` is equal for two families exactly when some bijection of
    the ground set maps one onto the other.  ``representative`` is the
    relabeled family realizing the encoding and ``relabeling`` maps
    element i to its canonical position relabeling[i-1].
    """

    encoding: bytes
    representative: Family
    relabeling: tuple[int, ...]


def canonical_form(family: Family) -> CanonicalForm:
    """Canonical form by greedy row-minimal ordering of the incidence matrix.

    Elements are assigned to canonical positions one at a time.  Sets are
    kept as an ordered grouping of columns refined by each fixed row, so
    the incidence row of an element (counts per group) is a prefix of the
    final row-major encoding; only elements with the minimal row key can
    start a minimal completion, and tied elements equivalent under a
    family-preserving transposition are tried once.
    """
    n, k, m = family.n, family.k, len(family)
    masks = family.masks
    if m == 0:
        rep = Family(n, k, [])
        return CanonicalForm(_encode(rep), rep, tuple(range(1, n + 1)))

    family_set = frozenset(masks)
    elem_cols = []  # per element: bitmap over column indices
    for e in range(1, n + 1):
        bit = 1 << (e - 1)
        cols = 0
        for ci, mm in enumerate(masks):
            if mm & bit:
                cols |= 1 << ci
        elem_cols.append(cols)

    def swap_preserves(x: int, y: int) -> bool:
        bx, by = 1 << (x - 1), 1 << (y - 1)
        swapped = set()
        for mm in masks:
            has_x, has_y = bool(mm & bx), bool(mm & by)
            if has_x != has_y:
                mm ^= bx | by
            swapped.add(mm)
        return frozenset(swapped) == family_set

    best: dict = {"rows": None, "perm": None}

    def dfs(groups: tuple[int, ...], unassigned: list[int], rows: list, perm: list):
        if not unassigned:
            rows_t = tuple(rows)
            if best["rows"] is None or rows_t < best["rows"]:
                best["rows"] = rows_t
                best["perm"] = tuple(perm)
            return
        keyed = [
            (tuple((elem_cols[x - 1] & g).bit_count() for g in groups), x)
            for x in unassigned
        ]
        min_key = min(key for key, _ in keyed)
        if best["rows"] is not None:
            prefix = tuple(rows + [min_key])
            if prefix > best["rows"][: len(prefix)]:
                return
        reps: list[int] = []
        for key, x in keyed:
            if key != min_key:
                continue
            if any(swap_preserves(x, y) for y in reps):
                continue
            reps.append(x)
        for x in reps:
            cols = elem_cols[x - 1]
            new_groups = []
            for g in groups:
                inside, outside = g & cols, g & ~cols
                if inside:
                    new_groups.append(inside)
                if outside:
                    new_groups.append(outside)
            dfs(
                tuple(new_groups),
                [y for y in unassigned if y != x],
                rows + [min_key],
                perm + [x],
            )

    dfs(((1 << m) - 1,), list(range(1, n + 1)), [], [])
    perm = best["perm"]
    position = {orig: i + 1 for i, orig in enumerate(perm)}
    rep = Family(n, k, [tuple(sorted(position[e] for e in s)) for s in family.sets])
    relabeling = tuple(position[e] for e in range(1, n + 1))
    return CanonicalForm(_encode(rep), rep, relabeling)


def _encode(rep: Family) -> bytes:
    body = ";".join(",".join(map(str, s)) for s in rep.sets)
    return f"n={rep.n};k={rep.k};{body}".encode()


def are_isomorphic(a: Family, b: Family) -> bool:
    return canonical_form(a).encoding == canonical_form(b).encoding


# ---------------------------------------------------------------------------
# Incremental d-wise state (shared by saturation and the search)
# ---------------------------------------------------------------------------


def _antichain(masks) -> tuple[int, ...]:
    ordered = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in ordered:
        if not any(s & ~m == 0 for s in kept):
            kept.append(m)
    return tuple(kept)


class _TraceState:
    """Minimal intersection traces of 1..d-1 members.

    levels[0] holds the members, levels[j-1] the inclusion-minimal
    intersections of j members.  ``floor`` is the admission threshold for
    a level-j trace: 1 for the plain d-wise property, d - j inside a
    non-trivial family.
    """

    __slots__ = ("d", "strict", "levels")

    def __init__(self, d: int, strict: bool):
        self.d = d
        self.strict = strict
        self.levels: tuple[tuple[int, ...], ...] = tuple(
            () for _ in range(max(d - 1, 1))
        )

    def admits(self, e: int) -> bool:
        for j, level in enumerate(self.levels, start=1):
            need = max(self.d - j, 1) if self.strict else 1
            for t in level:
                if (t & e).bit_count() < need:
                    return False
        return True

    def child(self, e: int) -> "_TraceState":
        out = _TraceState.__new__(_TraceState)
        out.d = self.d
        out.strict = self.strict
        new_levels = [self.levels[0] + (e,)]
        for j in range(2, self.d):
            grown = list(self.levels[j - 1])
            grown.extend(t & e for t in self.levels[j - 2])
            new_levels.append(_antichain(grown))
        out.levels = tuple(new_levels)
        return out


def saturate(family: Family, d: int) -> Family:
    """Close a d-wise intersecting family under lex-least admissible additions.

    Constraints only accumulate as sets are added, so one forward pass over
    the candidates in lexicographic order realizes the repeat-until-stable
    semantics.  Non-triviality is not enforced here.
    """
    if not is_d_wise_intersecting(family, d):
        raise ValueError("input family is not d-wise intersecting")
    state = _TraceState(d, strict=False)
    for m in sorted(family.masks):
        state = state.child(m)
    members = set(family.masks)
    out = list(family.masks)
    for c in combinations(range(1, family.n + 1), family.k):
        cm = set_mask(c)
        if cm in members or not state.admits(cm):
            continue
        state = state.child(cm)
        members.add(cm)
        out.append(cm)
    return Family.from_masks(family.n, family.k, out)


# ---------------------------------------------------------------------------
# Exact extremal search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IsoClass:
    classification: str  # 'A', 'H', 'B' or 'other'
    family: Family  # canonical representative
    encoding: bytes


@dataclass(frozen=True)
class SearchReport:
    n: int
    k: int
    d: int
    max_size: int
    iso_classes: tuple[IsoClass, ...]
    nodes: int
    elapsed_ms: float
    exhausted: bool

    def to_json_dict(self) -> dict:
        return {
            "params": {"n": self.n, "k": self.k, "d": self.d},
            "max_size": self.max_size,
            "iso_classes": [
                {
                    "classification": c.classification,
                    "sets": [list(s) for s in c.family.sets],
                }
                for c in self.iso_classes
            ],
            "nodes": self.nodes,
            "elapsed_ms": self.elapsed_ms,
            "exhausted": self.exhausted,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))


class _BudgetExceeded(Exception):
    pass


class _Branch:
    """One independent subtree with a private incumbent and node budget."""

    __slots__ = (
        "masks",
        "adj",
        "d",
        "best",
        "solutions",
        "nodes",
        "node_budget",
        "deadline",
        "exhausted",
        "stack",
    )

    def __init__(self, masks, adj, d, seed_best, node_budget, deadline):
        self.masks = masks
        self.adj = adj
        self.d = d
        self.best = seed_best
        self.solutions: list[tuple[int, ...]] = []
        self.nodes = 0
        self.node_budget = node_budget
        self.deadline = deadline
        self.exhausted = True
        self.stack: list[int] = []

    def run(self, prefix: list[int], cand: int, common: int, state: _TraceState) -> None:
        self.stack = list(prefix)
        try:
            self._walk(len(prefix), cand, common, state)
        except _BudgetExceeded:
            self.exhausted = False

    def _record(self, size: int) -> None:
        if size > self.best:
            self.best = size
            self.solutions = []
        if size == self.best:
            self.solutions.append(tuple(self.masks[i] for i in self.stack))

    def _walk(self, size: int, cand: int, common: int, state: _TraceState) -> None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise _BudgetExceeded
        if self.deadline is not None and self.nodes % 4096 == 0:
            if time.monotonic() > self.deadline:
                raise _BudgetExceeded
        d = self.d
        masks = self.masks
        bm = cand
        while bm:
            low = bm & -bm
            i = low.bit_length() - 1
            bm ^= low
            if size + 1 + bm.bit_count() < self.best:
                break  # candidates are scanned upward; successors only shrink
            e = masks[i]
            if d > 2 and not state.admits(e):
                continue
            new_common = common & e
            new_cand = cand & self.adj[i] & -(low << 1)
            if new_common:
                stuck = new_common
                probe = new_cand
                while probe and stuck:
                    pl = probe & -probe
                    stuck &= masks[pl.bit_length() - 1]
                    probe ^= pl
                if stuck:
                    continue  # some common element can never be escaped
            self.stack.append(i)
            if new_common == 0:
                self._record(size + 1)
            if new_cand and size + 1 + new_cand.bit_count() >= self.best:
                child = state.child(e) if d > 2 else state
                self._walk(size + 1, new_cand, new_common, child)
            self.stack.pop()


def _pairwise_floor_adjacency(masks: list[int], d: int) -> list[int]:
    """adj[i] = bitmap of candidates j sharing >= d-1 elements with i."""
    need = d - 1
    n_cand = len(masks)
    adj = [0] * n_cand
    for i in range(n_cand):
        mi = masks[i]
        row = 0
        for j in range(n_cand):
            if j != i and (mi & masks[j]).bit_count() >= need:
                row |= 1 << j
        adj[i] = row
    return adj


def _seed_constructions(n: int, k: int, d: int) -> list[Family]:
    """Verified non-trivial d-wise intersecting reference families on [n]."""
    seeds = []
    for kind in ("A", "H", "B", "K"):
        try:
            fam = constructions.generate(kind, n, k, d)
        except ValueError:
            continue
        if is_d_wise_intersecting(fam, d) and is_non_trivial(fam):
            seeds.append(fam)
    return seeds


def _classification_table(n: int, k: int, d: int) -> list[tuple[bytes, str]]:
    table = []
    seen = set()
    for kind in ("A", "H", "B"):
        try:
            fam = constructions.generate(kind, n, k, d)
        except ValueError:
            continue
        enc = canonical_form(fam).encoding
        if enc not in seen:
            table.append((enc, kind))
            seen.add(enc)
    return table


def search_max(
    n: int,
    k: int,
    d: int,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    time_budget: float | None = DEFAULT_TIME_BUDGET,
    threads: int | None = None,
    symmetry: bool = True,
) -> SearchReport:
    """Exact maximum size of a non-trivial d-wise intersecting family.

    If exhausted, ``max_size`` is the true maximum over all k-uniform
    families on [1, n] (0 when none exists) and ``iso_classes`` lists
    every extremal family up to relabeling.  On budget expiry the report
    is a valid lower bound flagged exhausted=False.  ``symmetry=False``
    disables the root reduction (used to validate it on tiny instances).
    """
    if d < 2:
        raise ValueError(f"d must be at least 2 (got d={d})")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n (got n={n}, k={k})")
    if n > MAX_SEARCH_WIDTH:
        raise ValueError(f"search supports n <= {MAX_SEARCH_WIDTH} (got n={n})")
    if threads is None:
        threads = int(os.environ.get("DWISE_THREADS", "1"))
    start = time.perf_counter()
    deadline = None if time_budget is None else time.monotonic() + time_budget

    cand_sets = list(combinations(range(1, n + 1), k))
    masks = [set_mask(c) for c in cand_sets]
    index = {m: i for i, m in enumerate(masks)}
    adj = _pairwise_floor_adjacency(masks, d)
    full_bitmap = (1 << len(masks)) - 1

    seeds = _seed_constructions(n, k, d)
    seed_best = max((len(f) for f in seeds), default=0)
    seed_solutions = [f.masks for f in seeds if len(f) == seed_best and seed_best > 0]

    root_state = _TraceState(d, strict=True)

    branches: list[tuple[list[int], int, int, _TraceState]] = []
    if not symmetry:
        branches.append(([], full_bitmap, (1 << n) - 1, root_state))
    else:
        first = set_mask(range(1, k + 1))
        i0 = index[first]
        state1 = root_state.child(first)
        lo = max(d - 1, 2 * k - n, 0)
        for i_shared in range(lo, k):
            second = set_mask(
                list(range(1, i_shared + 1)) + list(range(k + 1, 2 * k - i_shared + 1))
            )
            i1 = index[second]
            if (first & second).bit_count() < d - 1:
                continue
            cand = adj[i0] & adj[i1] & -(1 << (i1 + 1))
            branches.append(
                ([i0, i1], cand, first & second, state1.child(second))
            )

    workers = []
    for prefix, cand, common, state in branches:
        br = _Branch(masks, adj, d, seed_best, node_budget, deadline)
        workers.append((br, prefix, cand, common, state))

    if threads > 1 and len(workers) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda w: w[0].run(w[1], w[2], w[3], w[4]), workers))
    else:
        for w in workers:
            w[0].run(w[1], w[2], w[3], w[4])

    best = seed_best
    for br, *_ in workers:
        best = max(best, br.best)
    raw: list[tuple[int, ...]] = []
    if best == seed_best:
        raw.extend(seed_solutions)
    for br, *_ in workers:
        if br.best == best:
            raw.extend(br.solutions)
    nodes = sum(br.nodes for br, *_ in workers)
    exhausted = all(br.exhausted for br, *_ in workers)

    by_encoding: dict[bytes, Family] = {}
    for sol in raw:
        fam = Family.from_masks(n, k, sol)
        cf = canonical_form(fam)
        by_encoding.setdefault(cf.encoding, cf.representative)
    table = _classification_table(n, k, d)
    classes = []
    for enc in sorted(by_encoding):
        label = next((kind for t_enc, kind in table if t_enc == enc), "other")
        classes.append(IsoClass(label, by_encoding[enc], enc))

    if best == 0:
        classes = []
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return SearchReport(n, k, d, best, tuple(classes), nodes, elapsed_ms, exhausted)
