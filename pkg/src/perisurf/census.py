"""Exhaustive censuses of data sets by degree and surface genus.

Two enumeration strategies live here on purpose.  ``enumerate_data_sets``
generates candidates directly in canonical order with arithmetic pruning;
``enumerate_oracle`` is a deliberately plain nested-loop sweep (quotient
genus, cone count, divisor multisets, residue tuples) that leans entirely
on :func:`perisurf.core.validate`.  Tests hold the two equal — the oracle is
the arbiter.

Degree-1 actions are outside the formalism (no rotation number fits a free
action and no cone order at least 2 divides 1), so every census at degree 1
is empty.  For surface genus at least 2 the degree is bounded: an orbifold
with negative Euler characteristic has -chi >= 1/42, so the degree is at
most 84*(genus-1).  Genus 0 and 1 admit infinite families (free rotations
of every degree act on the torus), hence a census there demands an explicit
degree filter.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import gcd
from pathlib import Path

from .core import (
    ConePair,
    DataSet,
    canonicalize,
    classify,
    data_set_from_json,
    data_set_to_json,
    format_data_set,
    genus,
    validate,
)
from .realization import polygon_realization, verify_realization


def _divisors(n: int) -> list[int]:
    return [d for d in range(2, n + 1) if n % d == 0]


def _units(m: int) -> list[int]:
    return [c for c in range(1, m) if gcd(c, m) == 1]


def degree_cap(g: int) -> int:
    """Largest degree a data set of surface genus ``g >= 2`` can have."""
    if g < 2:
        raise ValueError("degree is unbounded below genus 2")
    return 84 * (g - 1)


def _free_rotations(n: int, g: int) -> list[DataSet]:
    if (g - 1) % n != 0:
        return []
    g0 = (g - 1) // n + 1
    if g0 < 0:
        return []
    out = []
    for r in _units(n):
        d = DataSet(n, g0, r)
        if validate(d).valid and genus(d) == g:
            out.append(d)
    return out


def _order_multisets(n: int, target: Fraction) -> list[tuple[int, ...]]:
    # non-decreasing divisor tuples whose deficiency sum hits target exactly
    divs = _divisors(n)
    out: list[tuple[int, ...]] = []

    def rec(start: int, remaining: Fraction, acc: list[int]) -> None:
        if remaining == 0:
            if acc:
                out.append(tuple(acc))
            return
        for i in range(start, len(divs)):
            w = 1 - Fraction(1, divs[i])
            if w > remaining:
                break
            acc.append(divs[i])
            rec(i, remaining - w, acc)
            acc.pop()

    rec(0, target, [])
    return out


def _residue_tuples(n: int, orders: tuple[int, ...]) -> list[tuple[int, ...]]:
    # canonical residue choices: non-decreasing within each run of equal
    # orders, weighted sum divisible by the degree
    runs: list[tuple[int, int]] = []
    for o in orders:
        if runs and runs[-1][0] == o:
            runs[-1] = (o, runs[-1][1] + 1)
        else:
            runs.append((o, 1))

    out: list[tuple[int, ...]] = []

    def rec(run_idx: int, weighted: int, acc: tuple[int, ...]) -> None:
        if run_idx == len(runs):
            if weighted % n == 0:
                out.append(acc)
            return
        order, count = runs[run_idx]
        weight = n // order
        for combo in combinations_with_replacement(_units(order), count):
            rec(run_idx + 1, weighted + weight * sum(combo), acc + combo)

    rec(0, 0, ())
    return out


def enumerate_data_sets(degree: int, g: int) -> list[DataSet]:
    """All valid data sets of this degree acting on a genus-``g`` surface.

    Output is canonical, duplicate-free and sorted by text rendering.
    """
    if degree < 1:
        raise ValueError(f"degree must be positive, got {degree}")
    if g < 0:
        raise ValueError(f"genus must be non-negative, got {g}")
    n = degree
    found = list(_free_rotations(n, g))

    g0 = 0
    while True:
        target = 2 - 2 * g0 + Fraction(2 * g - 2, n)
        if target <= 0:
            break
        for orders in _order_multisets(n, target):
            for cs in _residue_tuples(n, orders):
                d = DataSet(n, g0, 0,
                            tuple(ConePair(c, o) for c, o in zip(cs, orders)))
                if validate(d).valid:
                    assert genus(d) == g
                    found.append(d)
        g0 += 1
    return sorted(found, key=format_data_set)


def enumerate_oracle(degree: int, g: int) -> list[DataSet]:
    """Brute-force reference enumeration; slow, simple, trusted."""
    if degree < 1:
        raise ValueError(f"degree must be positive, got {degree}")
    if g < 0:
        raise ValueError(f"genus must be non-negative, got {g}")
    n = degree
    found: set[DataSet] = set()

    for g0 in range(0, g + 2):
        for r in range(0, n):
            d = DataSet(n, g0, r)
            if validate(d).valid and genus(d) == g:
                found.add(d)

    divs = _divisors(n)
    g0 = 0
    while 2 - 2 * g0 + Fraction(2 * g - 2, n) > 0:
        target = 2 - 2 * g0 + Fraction(2 * g - 2, n)
        for count in range(1, int(2 * target) + 1):
            for orders in combinations_with_replacement(divs, count):
                if sum(1 - Fraction(1, o) for o in orders) != target:
                    continue
                for cs in product(*(_units(o) for o in orders)):
                    d = DataSet(n, g0, 0,
                                tuple(ConePair(c, o) for c, o in zip(cs, orders)))
                    if validate(d).valid and genus(d) == g:
                        found.add(canonicalize(d)[0])
        g0 += 1
    return sorted(found, key=format_data_set)


def enumerate_irreducible(degree: int) -> list[DataSet]:
    """All valid irreducible type 1 data sets of this degree (any genus)."""
    n = degree
    if n < 2:
        return []
    found: set[DataSet] = set()
    for a in _divisors(n):
        for b in _divisors(n):
            for c1 in _units(a):
                for c2 in _units(b):
                    c3 = (-((n // a) * c1 + (n // b) * c2)) % n
                    if not 1 <= c3 < n or gcd(c3, n) != 1:
                        continue
                    d = DataSet(n, 0, 0,
                                (ConePair(c1, a), ConePair(c2, b), ConePair(c3, n)))
                    if validate(d).valid:
                        found.add(canonicalize(d)[0])
    return sorted(found, key=format_data_set)


@dataclass(frozen=True)
class CensusQuery:
    """What to enumerate: one exact genus or a genus bound, with optional
    degree list and action-class filters."""

    genus: int | None = None
    max_genus: int | None = None
    degrees: tuple[int, ...] | None = None
    action_class: str | None = None

    def __post_init__(self) -> None:
        if (self.genus is None) == (self.max_genus is None):
            raise ValueError("set exactly one of genus / max_genus")
        if self.degrees is not None:
            object.__setattr__(self, "degrees", tuple(self.degrees))

    def genus_range(self) -> list[int]:
        if self.genus is not None:
            return [self.genus]
        return list(range(0, self.max_genus + 1))


@dataclass(frozen=True)
class CensusRecord:
    data_set: DataSet
    genus: int
    action_class: str
    polygon_verified: bool | None


def _build_record(d: DataSet, g: int) -> CensusRecord:
    label = classify(d).label
    verified = None
    if label == "type1-irreducible":
        presentation = polygon_realization(d)
        verified = verify_realization(presentation, d).ok
    return CensusRecord(d, g, label, verified)


def _census_cell(task: tuple[int, int, bool]) -> list[CensusRecord]:
    n, g, use_oracle = task
    enumerator = enumerate_oracle if use_oracle else enumerate_data_sets
    return [_build_record(d, g) for d in enumerator(n, g)]


def census(query: CensusQuery, *, workers: int | None = None,
           oracle: bool = False) -> list[CensusRecord]:
    """Run a census; deterministic output order (genus, then degree).

    ``workers`` caps the process pool (default: available parallelism); the
    degree/genus grid is the partition unit, so results are independent of
    the worker count.
    """
    tasks: list[tuple[int, int, bool]] = []
    for g in query.genus_range():
        if query.degrees is not None:
            degs = query.degrees
        elif g >= 2:
            degs = tuple(range(1, degree_cap(g) + 1))
        else:
            raise ValueError(
                "a census below genus 2 has infinitely many data sets; "
                "restrict it with a degree filter")
        tasks.extend((n, g, oracle) for n in degs)

    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_census_cell, tasks))
    else:
        chunks = [_census_cell(t) for t in tasks]

    records = [rec for chunk in chunks for rec in chunk]
    if query.action_class is not None:
        records = [r for r in records if r.action_class == query.action_class]
    return records


def record_to_json(r: CensusRecord) -> dict:
    obj = data_set_to_json(r.data_set)
    obj["genus"] = r.genus
    obj["class"] = r.action_class
    obj["polygon_verified"] = r.polygon_verified
    return obj


def record_from_json(obj: dict) -> CensusRecord:
    fields = {k: v for k, v in obj.items()
              if k not in ("genus", "class", "polygon_verified")}
    d = data_set_from_json(fields)
    if not isinstance(d, DataSet):
        raise ValueError("census records hold plain data sets")
    return CensusRecord(d, obj["genus"], obj["class"], obj["polygon_verified"])


def write_census(records, path: str | Path) -> int:
    """Write records as JSON Lines; returns the number written."""
    count = 0
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(record_to_json(r), sort_keys=True) + "\n")
            count += 1
    return count


def read_census(path: str | Path) -> list[CensusRecord]:
    """Read a JSON Lines census; errors carry the offending line number."""
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                out.append(record_from_json(json.loads(line)))
            except (ValueError, KeyError, TypeError) as e:
                raise ValueError(f"{path}: line {lineno}: {e}") from None
    return out
