"""Family text and JSON formats.

Text format (version 1):

    # optional comments
    n=7 k=3
    1,2,3
    1,2,4

The first non-comment line carries the parameters; every following
non-comment line is one set as comma-separated ascending integers.
Duplicate sets, wrong cardinality and out-of-range elements are rejected
with the offending line number.  The JSON alternative is
``{"n": 7, "k": 3, "sets": [[1, 2, 3], [1, 2, 4]]}`` with entry numbers
taking the place of line numbers in error messages.
"""

from __future__ import annotations

import json
import re

from .families import Family

_HEADER = re.compile(r"^n=(\d+)\s+k=(\d+)$")


class FamilyParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_family_text(text: str) -> Family:
    n = k = None
    sets: list[tuple[int, ...]] = []
    seen: dict[tuple[int, ...], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            m = _HEADER.match(line)
            if not m:
                raise FamilyParseError(lineno, f"expected header 'n=<n> k=<k>', got {line!r}")
            n, k = int(m.group(1)), int(m.group(2))
            continue
        try:
            elements = tuple(int(p) for p in line.split(","))
        except ValueError:
            raise FamilyParseError(lineno, f"not a comma-separated integer list: {line!r}")
        if any(b <= a for a, b in zip(elements, elements[1:])):
            raise FamilyParseError(lineno, f"elements must be strictly ascending: {line!r}")
        if len(elements) != k:
            raise FamilyParseError(lineno, f"set has {len(elements)} elements, expected k={k}")
        if elements and (elements[0] < 1 or elements[-1] > n):
            raise FamilyParseError(lineno, f"element outside [1, {n}]: {line!r}")
        if elements in seen:
            raise FamilyParseError(lineno, f"duplicate of line {seen[elements]}: {line!r}")
        seen[elements] = lineno
        sets.append(elements)
    if n is None:
        raise FamilyParseError(1, "missing header 'n=<n> k=<k>'")
    return Family(n, k, sets)


def format_family_text(family: Family) -> str:
    lines = [f"n={family.n} k={family.k}"]
    lines.extend(",".join(map(str, s)) for s in family.sets)
    return "\n".join(lines) + "\n"


def parse_family_json(text: str) -> Family:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FamilyParseError(exc.lineno, f"invalid JSON: {exc.msg}")
    if not isinstance(obj, dict):
        raise FamilyParseError(1, "top-level JSON value must be an object")
    for key in ("n", "k", "sets"):
        if key not in obj:
            raise FamilyParseError(1, f"missing key {key!r}")
    n, k, sets = obj["n"], obj["k"], obj["sets"]
    if not isinstance(n, int) or not isinstance(k, int) or not isinstance(sets, list):
        raise FamilyParseError(1, "'n' and 'k' must be integers and 'sets' a list")
    out: list[tuple[int, ...]] = []
    seen: dict[tuple[int, ...], int] = {}
    for idx, entry in enumerate(sets, start=1):
        if not isinstance(entry, list) or not all(isinstance(e, int) for e in entry):
            raise FamilyParseError(idx, f"set {idx} is not a list of integers")
        elements = tuple(entry)
        if tuple(sorted(set(elements))) != elements:
            raise FamilyParseError(idx, f"set {idx} must be strictly ascending: {entry}")
        if len(elements) != k:
            raise FamilyParseError(idx, f"set {idx} has {len(elements)} elements, expected k={k}")
        if elements and (elements[0] < 1 or elements[-1] > n):
            raise FamilyParseError(idx, f"set {idx} has an element outside [1, {n}]")
        if elements in seen:
            raise FamilyParseError(idx, f"set {idx} duplicates set {seen[elements]}")
        seen[elements] = idx
        out.append(elements)
    return Family(n, k, out)


def format_family_json(family: Family) -> str:
    return json.dumps(
        {"n": family.n, "k": family.k, "sets": [list(s) for s in family.sets]},
        separators=(",", ":"),
    )
