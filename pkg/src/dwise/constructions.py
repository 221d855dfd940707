"""Reference families of k-sets in which every d members share a point.

Four kinds are built on the ground set [1, n]:

  H   kernel family: every set contains the kernel [1, d-1] and meets the
      window [d, k+1], plus the d-1 completions [1, k+1] minus one kernel
      element.  Extremal when 2d <= k.
  A   majority family: every set contains at least d of the first d+1
      elements.  Extremal when 2d >= k+1.
  B   mixed kernel family: sets missing exactly one kernel element but
      containing all of [d, k], together with the sets containing the
      kernel and meeting [d, k].  Sits between A and H when 2d < k.
  K   the complete k-uniform family on [1, k+1] (d is ignored).

closed_size returns the matching binomial formulas; the one for B is
derived here and is cross-checked against enumeration in the test suite
before anything else relies on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .families import Family

KINDS = ("H", "A", "B", "K")


def _check_params(kind: str, n: int, k: int, d: int) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}, expected one of {KINDS}")
    if k < 1:
        raise ValueError(f"k must be positive (got k={k})")
    if kind == "K":
        if n < k + 1:
            raise ValueError(f"kind K requires n >= k+1 (got n={n}, k={k})")
        return
    if not 2 <= d <= k:
        raise ValueError(f"kind {kind} requires 2 <= d <= k (got d={d}, k={k})")
    floor = {"H": k + 1, "A": k + 1, "B": k}[kind]
    if n < floor:
        raise ValueError(f"kind {kind} requires n >= {floor} (got n={n}, k={k}, d={d})")


def generate(kind: str, n: int, k: int, d: int = 0) -> Family:
    """Materialize one of the reference families in lexicographic order."""
    _check_params(kind, n, k, d)
    if kind == "K":
        return Family(n, k, combinations(range(1, k + 2), k))

    kernel = set(range(1, d))
    sets: list[tuple[int, ...]] = []
    if kind == "H":
        window = set(range(d, k + 2))
        rest = [x for x in range(1, n + 1) if x not in kernel]
        for tail in combinations(rest, k - d + 1):
            if window & set(tail):
                sets.append(tuple(sorted(kernel | set(tail))))
        full = set(range(1, k + 2))
        for i in kernel:
            sets.append(tuple(sorted(full - {i})))
    elif kind == "A":
        head = set(range(1, d + 2))
        for s in combinations(range(1, n + 1), k):
            if len(head & set(s)) >= d:
                sets.append(s)
    elif kind == "B":
        window = set(range(d, k + 1))
        outside = [x for x in range(1, n + 1) if x > k]
        for i in kernel:
            base = (kernel - {i}) | window
            for x in outside:
                sets.append(tuple(sorted(base | {x})))
        rest = [x for x in range(1, n + 1) if x not in kernel]
        for tail in combinations(rest, k - d + 1):
            if window & set(tail):
                sets.append(tuple(sorted(kernel | set(tail))))
    return Family(n, k, sets)


def _c(n: int, r: int) -> int:
    return comb(n, r) if 0 <= r <= n else 0


def closed_size(kind: str, n: int, k: int, d: int = 0) -> int:
    """Size of generate(kind, n, k, d) in closed form."""
    _check_params(kind, n, k, d)
    if kind == "K":
        return k + 1
    if kind == "A":
        return (d + 1) * _c(n - d - 1, k - d) + _c(n - d - 1, k - d - 1)
    if kind == "H":
        return _c(n - d + 1, k - d + 1) - _c(n - k - 1, k - d + 1) + d - 1
    # B: (d-1) choices of the missing kernel element, each with n-k tails,
    # plus the kernel-containing sets that meet [d, k].
    return (d - 1) * (n - k) + _c(n - d + 1, k - d + 1) - _c(n - k, k - d + 1)


@dataclass(frozen=True)
class SizeComparison:
    n: int
    k: int
    d: int
    sizes: dict[str, int]
    predicate_2d_ge_k_plus_1: bool
    consistent: bool


def compare_extremal_sizes(n: int, k: int, d: int) -> SizeComparison:
    """Check that A overtakes H exactly when 2d >= k+1 (ties allowed)."""
    if not 2 <= d < k:
        raise ValueError(f"size comparison requires 2 <= d < k (got d={d}, k={k})")
    if n < 3 * k:
        raise ValueError(f"size comparison requires n >= 3k (got n={n}, k={k})")
    sizes = {kind: closed_size(kind, n, k, d) for kind in ("H", "A", "B")}
    predicate = 2 * d >= k + 1
    consistent = (sizes["A"] >= sizes["H"]) == predicate
    return SizeComparison(n, k, d, sizes, predicate, consistent)


def _ceil_e_times(m: int) -> int:
    """ceil(e * m) for a positive integer m, via a certified enclosure of e.

    The series sum 1/j! is summed exactly with Fractions; the tail after N
    terms is below 2/(N+1)!, and N grows until the two enclosure endpoints
    round to the same integer.
    """
    n_terms = 24
    while True:
        term = Fraction(1)
        low = Fraction(1)
        for j in range(1, n_terms + 1):
            term /= j
            low += term
        high = low + 2 * term / (n_terms + 1)
        lo_ceil = -((-low.numerator * m) // low.denominator)
        hi_ceil = -((-high.numerator * m) // high.denominator)
        if lo_ceil == hi_ceil:
            return lo_ceil
        n_terms *= 2


def threshold_n0(k: int, d: int) -> int:
    """Sufficiency threshold d + ceil(e * (k^2 2^k)^(2^k)) * (k - d).

    Exact big-integer arithmetic throughout; the ceiling is applied to the
    e-multiple before scaling by (k - d), so the result is an integer upper
    bound for the real-valued expression.
    """
    if not 2 <= d <= k:
        raise ValueError(f"threshold requires 2 <= d <= k (got d={d}, k={k})")
    if k == d:
        return d
    base = (k * k * (1 << k)) ** (1 << k)
    return d + _ceil_e_times(base) * (k - d)
