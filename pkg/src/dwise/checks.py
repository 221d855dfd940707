"""Executable verifiers for the structural facts about non-trivial d-wise
intersecting families, producing pass / counterexample reports.

Severity policy.  Checks whose supporting argument needs d >= 3 run as
hard assertions only there; for d = 2 the same checks run in report mode,
because the argument's margin is exactly zero at d = 2 and genuine
boundary witnesses exist (for the kernel family H(k, 2) with the ground
set large enough, the pairs {1, x} with x beyond the window reach core
degree exactly k).  A report-severity violation is a boundary finding,
not a refutation; the distinction is carried in CheckReport.severity.

The m-wise floor (any m members of a non-trivial d-wise intersecting
family share at least d - m + 1 points) is asserted for every d >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import ceil

from . import constructions
from .families import (
    Family,
    _first_subfamily_with_intersection,
    _intersection_levels,
    common_intersection,
    is_d_wise_intersecting,
)
from .search import SearchReport, canonical_form, search_max
from .sunflowers import core_degree, core_degree_witness, large_core_sets

PASS = "pass"
COUNTEREXAMPLE = "counterexample"
BOUNDARY = "boundary-report"
REPORT = "report"
INCONCLUSIVE = "inconclusive"


class FamilyInputError(ValueError):
    """The family handed to a verifier violates its precondition."""


@dataclass(frozen=True)
class CheckReport:
    check_id: str
    status: str  # pass | counterexample | boundary-report | report | inconclusive
    severity: str  # assert | report
    witness: object = None
    detail: str = ""

    @property
    def failed_assertion(self) -> bool:
        return self.status == COUNTEREXAMPLE and self.severity == "assert"


def _require_valid(family: Family, d: int) -> None:
    if not is_d_wise_intersecting(family, d):
        raise FamilyInputError(f"family is not {d}-wise intersecting")
    if common_intersection(family):
        raise FamilyInputError(
            "family has a common element; the verifiers need a non-trivial family"
        )


# ---------------------------------------------------------------------------
# Lemma suite
# ---------------------------------------------------------------------------


def run_lemma_suite(family: Family, d: int, tau: int | None = None) -> list[CheckReport]:
    """Run the four structural checks in fixed order.

    1. m_wise_floor        any m members share >= d - m + 1 points (2<=m<=d)
    2. small_core_cap      no (d-1)-set has core degree k or more
    3. large_core_meets_all every member meets every large-core d-set in
                            >= d - 1 points
    4. large_cores_pairwise the large-core d-sets pairwise share >= d - 1

    Checks 2-4 are assertions for d >= 3 and boundary reports for d = 2.
    """
    _require_valid(family, d)
    if tau is None:
        tau = family.k
    k = family.k
    soft = "assert" if d >= 3 else "report"
    reports = [_m_wise_floor(family, d)]

    # small cores: only (d-1)-sets inside at least k members can reach k
    counts: dict[tuple[int, ...], int] = {}
    for s in family.sets:
        for sub in combinations(s, d - 1):
            counts[sub] = counts.get(sub, 0) + 1
    violation = None
    for sub, cnt in sorted(counts.items()):
        if cnt < k:
            continue
        deg, delta = core_degree_witness(family, sub, cap=k)
        if deg >= k:
            violation = (sub, delta)
            break
    if violation is None:
        reports.append(CheckReport("small_core_cap", PASS, soft))
    else:
        status = COUNTEREXAMPLE if soft == "assert" else BOUNDARY
        reports.append(
            CheckReport(
                "small_core_cap",
                status,
                soft,
                witness=violation,
                detail=f"core {violation[0]} packs {k} petals",
            )
        )

    sd = large_core_sets(family, d, tau)
    hits = []
    for dset in sd:
        dm = set(dset)
        for a in family.sets:
            if len(dm.intersection(a)) < d - 1:
                hits.append((dset, a, core_degree(family, dset)))
                break
    if not hits:
        reports.append(CheckReport("large_core_meets_all", PASS, soft))
    else:
        status = COUNTEREXAMPLE if soft == "assert" else BOUNDARY
        reports.append(
            CheckReport(
                "large_core_meets_all",
                status,
                soft,
                witness=tuple(hits),
                detail=f"{len(hits)} large-core d-set(s) miss some member",
            )
        )

    bad_pair = next(
        (
            (a, b)
            for a, b in combinations(sd.members, 2)
            if len(set(a) & set(b)) < d - 1
        ),
        None,
    )
    if bad_pair is None:
        reports.append(CheckReport("large_cores_pairwise", PASS, soft))
    else:
        status = COUNTEREXAMPLE if soft == "assert" else BOUNDARY
        reports.append(
            CheckReport("large_cores_pairwise", status, soft, witness=bad_pair)
        )
    return reports


def _m_wise_floor(family: Family, d: int) -> CheckReport:
    levels = _intersection_levels(family.masks, min(d, len(family)))
    for m in range(2, min(d, len(family)) + 1):
        value = min(t.bit_count() for t in levels[m - 1])
        if value < d - m + 1:
            idx = _first_subfamily_with_intersection(
                family.masks, m, value, (1 << family.n) - 1
            )
            witness = (m, value, tuple(family.sets[i] for i in idx))
            return CheckReport(
                "m_wise_floor",
                COUNTEREXAMPLE,
                "assert",
                witness=witness,
                detail=f"{m} members share only {value} < {d - m + 1} points",
            )
    return CheckReport("m_wise_floor", PASS, "assert")


# ---------------------------------------------------------------------------
# Shape embeddings
# ---------------------------------------------------------------------------


def embeds_in_majority(family: Family, d: int) -> tuple[int, ...] | None:
    """A (d+1)-set V with |A & V| >= d for every member, if one exists."""
    for v in combinations(range(1, family.n + 1), d + 1):
        vs = set(v)
        if all(len(vs.intersection(a)) >= d for a in family.sets):
            return v
    return None


def embeds_in_kernel(
    family: Family,
    d: int,
    kernel: tuple[int, ...] | None = None,
    window_base: tuple[int, ...] = (),
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """(K, W) realizing the kernel-family shape, if any.

    Every member must either contain the (d-1)-set K and meet the
    (k-d+2)-window W, or equal (K | W) minus one kernel element.  Fixing
    ``kernel`` and part of the window (from a known star) prunes the
    enumeration to the last window element.
    """
    k, n = family.k, family.n
    wsize = k - d + 2
    kernels = [kernel] if kernel is not None else combinations(range(1, n + 1), d - 1)
    for kern in kernels:
        ks = set(kern)
        if set(window_base) & ks:
            continue
        rest = [x for x in range(1, n + 1) if x not in ks and x not in window_base]
        for tail in combinations(rest, wsize - len(window_base)):
            w = set(window_base) | set(tail)
            completions = {frozenset((ks | w) - {i}) for i in ks}
            good = True
            for a in family.sets:
                sa = set(a)
                if ks <= sa and w & sa:
                    continue
                if frozenset(sa) in completions:
                    continue
                good = False
                break
            if good:
                return tuple(sorted(ks)), tuple(sorted(w))
    return None


# ---------------------------------------------------------------------------
# Exhaustive small cases
# ---------------------------------------------------------------------------


def verify_small_cases(
    n: int,
    k: int,
    d: int,
    *,
    node_budget: int = 10**8,
    time_budget: float | None = 300.0,
) -> CheckReport:
    """Exhaustive dispatch on d versus k.

    d > k: no non-trivial d-wise intersecting family may exist (this has
    no ground-set threshold, so a violation is a genuine counterexample).
    d = k: the unique extremal family is the complete k-uniform family on
    k+1 points, of size k+1 (again threshold-free for n >= k+1).
    d < k: the maximum is compared against the larger reference family
    and extremal classes are tested against the containment dichotomy.
    Both d < k conclusions hold above an astronomically large ground-set
    threshold, so desk-scale violations are reported as boundary findings
    rather than counterexamples.
    """
    rep = search_max(n, k, d, node_budget=node_budget, time_budget=time_budget)
    if not rep.exhausted:
        return CheckReport(
            "exhaustive_small_case",
            INCONCLUSIVE,
            "report",
            witness=rep,
            detail="search budget exhausted before the space was covered",
        )
    if d > k:
        if rep.max_size == 0:
            return CheckReport(
                "exhaustive_small_case", PASS, "assert", witness=rep,
                detail="no non-trivial family exists",
            )
        return CheckReport(
            "exhaustive_small_case", COUNTEREXAMPLE, "assert", witness=rep,
            detail=f"found a non-trivial {d}-wise family of {k}-sets",
        )
    if d == k:
        if n < k + 1:
            expected = rep.max_size == 0
            status = PASS if expected else COUNTEREXAMPLE
            return CheckReport("exhaustive_small_case", status, "assert", witness=rep)
        complete = constructions.generate("K", n, k, d)
        ok = (
            rep.max_size == k + 1
            and len(rep.iso_classes) == 1
            and rep.iso_classes[0].encoding == canonical_form(complete).encoding
        )
        status = PASS if ok else COUNTEREXAMPLE
        return CheckReport(
            "exhaustive_small_case", status, "assert", witness=rep,
            detail="unique extremal class is the complete family on k+1 points"
            if ok
            else "extremal classes differ from the complete family",
        )

    # d < k
    try:
        bound = max(constructions.closed_size("H", n, k, d),
                    constructions.closed_size("A", n, k, d))
    except ValueError:
        return CheckReport(
            "exhaustive_small_case", REPORT, "report", witness=rep,
            detail="reference families undefined at these parameters",
        )
    if rep.max_size > bound:
        return CheckReport(
            "exhaustive_small_case", BOUNDARY, "report", witness=rep,
            detail=f"max {rep.max_size} exceeds the reference bound {bound} "
            "(ground set below the theorem threshold)",
        )
    if rep.max_size < bound:
        return CheckReport(
            "exhaustive_small_case", COUNTEREXAMPLE, "assert", witness=rep,
            detail=f"max {rep.max_size} below the achievable bound {bound}",
        )
    sizes = {kind: constructions.closed_size(kind, n, k, d) for kind in ("H", "A", "B")}
    offenders = []
    for cls in rep.iso_classes:
        fam = cls.family
        if 2 * d >= k:
            if len(fam) > min(sizes["H"], sizes["A"]):
                if embeds_in_kernel(fam, d) is None and embeds_in_majority(fam, d) is None:
                    offenders.append(cls)
        else:
            if len(fam) > sizes["B"] and embeds_in_kernel(fam, d) is None:
                offenders.append(cls)
    if offenders:
        return CheckReport(
            "exhaustive_small_case", BOUNDARY, "report", witness=tuple(offenders),
            detail=f"{len(offenders)} extremal class(es) escape the containment "
            "dichotomy (ground set below the theorem threshold)",
        )
    return CheckReport(
        "exhaustive_small_case", PASS, "assert", witness=rep,
        detail=f"max {rep.max_size} matches the reference bound",
    )


# ---------------------------------------------------------------------------
# Structure bound
# ---------------------------------------------------------------------------


def structure_bound_check(family: Family, d: int) -> CheckReport:
    """Classify the large-core d-sets and check the induced containments.

    If at least 3 large-core d-sets fit on d+1 points, the family must be
    a subfamily of the majority shape (no ground-set threshold; a failure
    for d >= 3 is a counterexample).  If they contain a star of k-d+1 (or
    k-d+2) petals on a (d-1)-kernel, the family size is bounded by
    max(|B|, |H|) and, whenever it beats |B|, the family must embed in the
    kernel shape.  The literal bound |F| <= |H| printed alongside the star
    case fails when |B| > |H| (the majority family at d = k-1 meets the
    star hypothesis and beats |H|), so exceeding |H| within max(|B|, |H|)
    is reported as a boundary finding, not a counterexample.
    """
    _require_valid(family, d)
    k, n = family.k, family.n
    soft = "assert" if d >= 3 else "report"
    sd = large_core_sets(family, d, k)
    union = set().union(*map(set, sd.members)) if sd.members else set()

    if len(sd) >= 3 and len(union) <= d + 1:
        v = tuple(sorted(union))
        bad = next((a for a in family.sets if len(set(v) & set(a)) < d), None)
        if bad is None:
            return CheckReport(
                "structure_bound", PASS, soft, witness=("majority", v),
                detail=f"family lies in the majority shape on {v}",
            )
        status = COUNTEREXAMPLE if soft == "assert" else BOUNDARY
        return CheckReport(
            "structure_bound", status, soft, witness=("majority", v, bad),
            detail=f"member {bad} meets {v} in fewer than d points",
        )

    star = _largest_star(sd.members, d)
    if star is not None and len(star[1]) >= k - d + 1:
        kernel, extras = star
        window_kind = "k-d+2" if len(extras) >= k - d + 2 else "k-d+1"
        size_h = constructions.closed_size("H", n, k, d)
        size_b = constructions.closed_size("B", n, k, d)
        if len(family) > max(size_b, size_h):
            status = COUNTEREXAMPLE if soft == "assert" else BOUNDARY
            return CheckReport(
                "structure_bound", status, soft,
                witness=("kernel", kernel, extras),
                detail=f"|F|={len(family)} exceeds max(|B|,|H|)={max(size_b, size_h)}",
            )
        embedding = embeds_in_kernel(
            family, d, kernel=kernel, window_base=extras[: k - d + 2]
        )
        if len(family) > size_b and embedding is None:
            status = COUNTEREXAMPLE if soft == "assert" else BOUNDARY
            return CheckReport(
                "structure_bound", status, soft,
                witness=("kernel", kernel, extras),
                detail=f"|F|={len(family)} beats |B|={size_b} yet does not embed "
                "in the kernel shape",
            )
        if len(family) > size_h:
            return CheckReport(
                "structure_bound", BOUNDARY, "report",
                witness=("kernel", kernel, extras, embedding),
                detail=f"|F|={len(family)} within max(|B|,|H|) but above |H|={size_h} "
                f"(star window {window_kind}); the literal |H| bound needs |B| <= |H|",
            )
        return CheckReport(
            "structure_bound", PASS, soft,
            witness=("kernel", kernel, extras, embedding),
            detail=f"|F|={len(family)} <= |H|={size_h}; star window {window_kind}"
            + ("; embedding found" if embedding else ""),
        )

    return CheckReport(
        "structure_bound", REPORT, "report", witness=sd.members,
        detail="hypotheses unmet: large-core d-sets form neither shape",
    )


def _largest_star(
    members: tuple[tuple[int, ...], ...], d: int
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Largest sub-star (kernel, extra points) among a collection of d-sets."""
    best = None
    counts: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for s in members:
        for kern in combinations(s, d - 1):
            counts.setdefault(kern, []).append(s)
    for kern, stars in sorted(counts.items()):
        if best is not None and len(stars) <= len(best[1]):
            continue
        ks = set(kern)
        extras = tuple(sorted(set().union(*map(set, stars)) - ks))
        best = (kern, extras)
    return best


# ---------------------------------------------------------------------------
# Extremal-classes probe
# ---------------------------------------------------------------------------


def conjecture_probe(
    n: int,
    k: int,
    d: int,
    *,
    node_budget: int = 10**8,
    time_budget: float | None = 300.0,
) -> CheckReport:
    """Compare the exact extremal classes against the two reference families.

    Always report severity: uniqueness of the extremal classes is an open
    question and boundary behavior (extra classes at small ground sets) is
    an expected finding, not a failure.
    """
    if d <= 1 or n < ceil(k * d / (d - 1)):
        raise ValueError(
            f"probe needs n >= ceil(kd/(d-1)) = {ceil(k * d / (d - 1))} (got n={n})"
        )
    rep = search_max(n, k, d, node_budget=node_budget, time_budget=time_budget)
    if not rep.exhausted:
        return CheckReport("extremal_classes_probe", INCONCLUSIVE, "report", witness=rep)
    refs = {}
    for kind in ("H", "A"):
        try:
            refs[kind] = constructions.generate(kind, n, k, d)
        except ValueError:
            pass
    best_ref = max((len(f) for f in refs.values()), default=0)
    expected = {
        canonical_form(fam).encoding: kind
        for kind, fam in refs.items()
        if len(fam) == best_ref
    }
    found = {cls.encoding: cls for cls in rep.iso_classes}
    extras = tuple(found[e] for e in sorted(found.keys() - expected.keys()))
    missing = tuple(sorted(expected[e] for e in expected.keys() - found.keys()))
    if rep.max_size == best_ref and not extras and not missing:
        return CheckReport(
            "extremal_classes_probe", PASS, "report", witness=rep,
            detail="extremal classes are exactly the reference families",
        )
    return CheckReport(
        "extremal_classes_probe", BOUNDARY, "report",
        witness={"report": rep, "extra_classes": extras, "missing": missing},
        detail=f"max {rep.max_size} vs reference {best_ref}; "
        f"{len(extras)} extra class(es), {len(missing)} missing",
    )


def worst_exit_code(reports: list[CheckReport]) -> int:
    """0 all pass, 2 assert-severity counterexample, 3 inconclusive."""
    code = 0
    for r in reports:
        if r.failed_assertion:
            return 2
        if r.status == INCONCLUSIVE:
            code = max(code, 3)
    return code
