"""Data sets for periodic homeomorphisms of closed orientable surfaces.

A data set ``(n, g0, r; (c1,n1), ..., (cl,nl))`` records an order-``n``
cyclic action: ``g0`` is the genus of the quotient surface, ``r`` the
rotation number of a free action (nonzero exactly when there are no cone
pairs), and each cone pair ``(c_i, n_i)`` the local rotation data of a
branch orbit of the quotient map.  A *marked* data set carries a sign and a
non-empty list of marked cone indices on top: the marked orbits are the
boundary left after drilling them out of the surface.

Constructors check only structural sanity (integer fields, basic ranges) so
that parsed text can always be represented; all semantic requirements live
in :func:`validate`, which reports every violated condition instead of
stopping at the first.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction
from math import gcd, lcm


def _check_int(value: object, name: str) -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"{name} must be an integer, got {value!r}")


@dataclass(frozen=True)
class ConePair:
    """One branch orbit: local rotation ``c`` of local order ``order``."""

    c: int
    order: int

    def __post_init__(self) -> None:
        _check_int(self.c, "c")
        _check_int(self.order, "order")
        if self.order < 1:
            raise ValueError(f"cone order must be positive, got {self.order}")
        if self.c < 0:
            raise ValueError(f"cone rotation must be non-negative, got {self.c}")


@dataclass(frozen=True)
class DataSet:
    """A data set ``(degree, quotient_genus, rotation; cone_pairs)``."""

    degree: int
    quotient_genus: int
    rotation: int
    cone_pairs: tuple[ConePair, ...] = ()

    def __post_init__(self) -> None:
        _check_int(self.degree, "degree")
        _check_int(self.quotient_genus, "quotient_genus")
        _check_int(self.rotation, "rotation")
        if self.degree < 1:
            raise ValueError(f"degree must be positive, got {self.degree}")
        if self.quotient_genus < 0:
            raise ValueError("quotient genus must be non-negative")
        if self.rotation < 0:
            raise ValueError("rotation must be non-negative")
        pairs = tuple(self.cone_pairs)
        if not all(isinstance(p, ConePair) for p in pairs):
            raise TypeError("cone_pairs must contain ConePair values")
        object.__setattr__(self, "cone_pairs", pairs)

    @property
    def num_pairs(self) -> int:
        return len(self.cone_pairs)

    def __str__(self) -> str:
        return format_data_set(self)


@dataclass(frozen=True)
class MarkedDataSet:
    """A data set with a sign and marked cone indices (the boundary orbits).

    ``marks`` may be structurally empty (gluing can consume every marked
    orbit); :func:`validate` flags that, and open-book operations refuse an
    empty boundary.
    """

    base: DataSet
    sign: str
    marks: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.base, DataSet):
            raise TypeError("base must be a DataSet")
        if self.sign not in ("+", "-"):
            raise ValueError(f"sign must be '+' or '-', got {self.sign!r}")
        marks = tuple(self.marks)
        for m in marks:
            _check_int(m, "mark")
            if m < 1:
                raise ValueError(f"mark indices are 1-based, got {m}")
        object.__setattr__(self, "marks", marks)

    @property
    def degree(self) -> int:
        return self.base.degree

    def __str__(self) -> str:
        return format_data_set(self)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate`: every violated condition, or none."""

    valid: bool
    violations: tuple[tuple[str, str], ...] = ()

    def ids(self) -> tuple[str, ...]:
        return tuple(cond for cond, _ in self.violations)


@dataclass(frozen=True)
class ActionClass:
    """Classification of a data set's action.

    ``kind`` is one of ``"rotational"``, ``"type1"``, ``"type2"``;
    ``irreducible`` is meaningful for type 1 only.
    """

    kind: str
    irreducible: bool = False

    @property
    def label(self) -> str:
        if self.kind == "type1" and self.irreducible:
            return "type1-irreducible"
        return self.kind


def mod_inverse(c: int, m: int) -> int:
    """Inverse of ``c`` modulo ``m``, normalized to ``[1, m-1]``.

    Raises ``ValueError`` unless ``m >= 2`` and ``gcd(c, m) == 1``.
    """
    _check_int(c, "c")
    _check_int(m, "m")
    if m < 2:
        raise ValueError(f"modulus must be at least 2, got {m}")
    try:
        return pow(c, -1, m)
    except ValueError:
        raise ValueError(f"{c} is not invertible modulo {m}") from None


def _rh_genus(degree: int, quotient_genus: int, orders: list[int]) -> Fraction:
    deficiency = sum((1 - Fraction(1, o) for o in orders), Fraction(0))
    return 1 - Fraction(degree, 2) * (2 - 2 * quotient_genus - deficiency)


def genus(d: DataSet | MarkedDataSet) -> int:
    """Genus of the total surface the data set acts on.

    Computed from the degree, quotient genus and cone orders alone; raises
    ``ValueError`` when the result is not a non-negative integer.
    """
    base = d.base if isinstance(d, MarkedDataSet) else d
    g = _rh_genus(base.degree, base.quotient_genus,
                  [p.order for p in base.cone_pairs])
    if g.denominator != 1 or g < 0:
        raise ValueError(f"degree/cone data give surface genus {g}, "
                         "which is not a non-negative integer")
    return int(g)


def validate(d: DataSet | MarkedDataSet) -> ValidationReport:
    """Check every defining condition and report all violations.

    Condition ids: ``i`` (rotation vs. cone pairs), ``ii`` (cone orders
    divide the degree), ``iii`` (reduced residues), ``iv`` (lcm stability /
    sphere-quotient lcm), ``v`` (weighted residue sum), and
    ``genus-integrality``.  Marked data sets add a ``marks`` id.
    """
    mark_violations: list[tuple[str, str]] = []
    if isinstance(d, MarkedDataSet):
        l = d.base.num_pairs
        if not d.marks:
            mark_violations.append(("marks", "marked data set has no marks"))
        if len(set(d.marks)) != len(d.marks):
            mark_violations.append(("marks", "mark indices must be distinct"))
        for m in d.marks:
            if not 1 <= m <= l:
                mark_violations.append(
                    ("marks", f"mark {m} is outside the cone index range 1..{l}"))
        d = d.base

    n, g0, r, pairs = d.degree, d.quotient_genus, d.rotation, d.cone_pairs
    l = len(pairs)
    out: list[tuple[str, str]] = []

    if l == 0:
        if not (1 <= r < n) or gcd(r, n) != 1:
            out.append(("i", f"a free action needs a rotation in [1,{n - 1}] "
                             f"coprime to {n}, got {r}"))
    elif r != 0:
        out.append(("i", f"rotation must be 0 when cone pairs are present, got {r}"))

    for idx, p in enumerate(pairs, 1):
        if n % p.order != 0:
            out.append(("ii", f"cone order {p.order} at index {idx} "
                              f"does not divide the degree {n}"))

    for idx, p in enumerate(pairs, 1):
        if not 1 <= p.c < p.order:
            out.append(("iii", f"cone rotation {p.c} at index {idx} "
                               f"is not in [1,{p.order - 1}]"))
        elif gcd(p.c, p.order) != 1:
            out.append(("iii", f"cone rotation {p.c} at index {idx} "
                               f"is not coprime to its order {p.order}"))

    orders = [p.order for p in pairs]
    full = lcm(*orders) if orders else 1
    # the lcm must be insensitive to dropping any single cone order
    for idx in range(l):
        rest = orders[:idx] + orders[idx + 1:]
        partial = lcm(*rest) if rest else 1
        if partial != full:
            out.append(("iv", f"dropping cone {idx + 1} changes the lcm of the "
                              f"cone orders from {full} to {partial}"))
    if g0 == 0 and full != n:
        out.append(("iv", f"with quotient genus 0 the lcm of the cone orders "
                          f"must equal the degree, got {full}"))

    if l:
        weighted = sum((n // p.order) * p.c for p in pairs if n % p.order == 0)
        if weighted % n != 0:
            out.append(("v", f"weighted residue sum is {weighted % n} (mod {n}), "
                             "expected 0"))

    g = _rh_genus(n, g0, orders)
    if g.denominator != 1 or g < 0:
        out.append(("genus-integrality",
                    f"degree/cone data give surface genus {g}"))

    violations = tuple(out + mark_violations)
    return ValidationReport(valid=not violations, violations=violations)


def classify(d: DataSet | MarkedDataSet) -> ActionClass:
    """Classify the action: rotational, type 1 (maybe irreducible), or type 2."""
    base = d.base if isinstance(d, MarkedDataSet) else d
    if base.rotation != 0:
        return ActionClass("rotational")
    n, pairs = base.degree, base.cone_pairs
    l = len(pairs)
    if l >= 2 and l % 2 == 0 and all(p.order == n for p in pairs):
        k = l // 2
        counts = Counter(p.c for p in pairs)
        s = min(counts)
        partner = n - s
        if 1 <= s <= n - 1 and gcd(s, n) == 1:
            if s == partner:
                matches = counts == {s: 2 * k}
            else:
                matches = counts == {s: k, partner: k}
            if matches and (k == 1) == (n > 2):
                return ActionClass("rotational")
    if l == 3 and any(p.order == n for p in pairs):
        return ActionClass("type1", irreducible=base.quotient_genus == 0)
    return ActionClass("type2")


def canonicalize(d: DataSet) -> tuple[DataSet, tuple[int, ...]]:
    """Sort cone pairs by (order, rotation); returns the applied permutation.

    ``perm[k-1]`` is the old (1-based) index of the new ``k``-th pair, so
    marks can be transported through the inverse.
    """
    pairs = d.cone_pairs
    order = sorted(range(len(pairs)), key=lambda i: (pairs[i].order, pairs[i].c))
    perm = tuple(i + 1 for i in order)
    canon = replace(d, cone_pairs=tuple(pairs[i] for i in order))
    return canon, perm


def canonicalize_marked(m: MarkedDataSet) -> tuple[MarkedDataSet, tuple[int, ...]]:
    """Canonicalize the base and transport the marks along."""
    base, perm = canonicalize(m.base)
    inverse = {old: new for new, old in enumerate(perm, 1)}
    try:
        marks = tuple(sorted(inverse[j] for j in m.marks))
    except KeyError as e:
        raise ValueError(f"mark {e.args[0]} is outside the cone index range") from None
    return MarkedDataSet(base, m.sign, marks), perm


# --- text form -------------------------------------------------------------
#
# dataset := "(" degree sign? "," g0 ("," r)? ";" (pairs | "-") ("," marks)? ")"
# pair    := "(" c "," n ")" ("×" count)?
# sign    := "_+" | "_-"
# marks   := "[" (idx ("," idx)*)? "]"
#
# Tolerated variants: arbitrary whitespace, U+2212 for the empty-pairs dash,
# "," in place of ";" when the next token unambiguously starts the pair
# list, subscript signs "₊"/"₋" without the underscore, and a "×k"/"xk"
# repetition suffix on a cone pair (several sources print the tuple in each
# of these ways).


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str) -> None:
        if not self.take(ch):
            got = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, found {got!r}", self.pos)

    def number(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            got = self.peek() or "end of input"
            raise ParseError(f"expected a number, found {got!r}", self.pos)
        return int(self.text[start:self.pos])


_DASHES = ("-", "−")


def parse_data_set(text: str) -> DataSet | MarkedDataSet:
    """Parse the tuple notation; raises :class:`ParseError` with a position.

    Only the grammar is enforced here — semantic conditions are left to
    :func:`validate`.
    """
    cur = _Cursor(text)
    cur.expect("(")
    degree = cur.number()
    sign = None
    if cur.take("_"):
        if cur.take("+"):
            sign = "+"
        elif cur.peek() in _DASHES:
            cur.pos += 1
            sign = "-"
        else:
            raise ParseError("expected '+' or '-' after '_'", cur.pos)
    elif cur.take("₊"):
        sign = "+"
    elif cur.take("₋"):
        sign = "-"
    cur.expect(",")
    g0 = cur.number()

    rotation = 0
    if cur.take(";"):
        pass
    elif cur.take(","):
        if cur.peek().isdigit():
            rotation = cur.number()
            if not (cur.take(";") or cur.take(",")):
                raise ParseError("expected ';' before the cone pairs", cur.pos)
        # otherwise the comma already separated the preamble from the body
    else:
        raise ParseError("expected ';' after the preamble", cur.pos)

    pairs: list[ConePair] = []
    marks: tuple[int, ...] | None = None
    if cur.peek() in _DASHES:
        cur.pos += 1
        if cur.take(",") and cur.peek() != "[":
            raise ParseError("expected a marks list after ','", cur.pos)
    else:
        while True:
            if cur.peek() == "[":
                break
            cur.expect("(")
            c = cur.number()
            cur.expect(",")
            order = cur.number()
            cur.expect(")")
            count = 1
            if cur.peek() in ("×", "x"):
                cur.pos += 1
                count = cur.number()
                if count < 1:
                    raise ParseError("repeat count must be positive", cur.pos)
            pairs.extend([ConePair(c, order)] * count)
            if not cur.take(","):
                break
    if cur.peek() == "[":
        cur.expect("[")
        idxs: list[int] = []
        if cur.peek() != "]":
            idxs.append(cur.number())
            while cur.take(","):
                idxs.append(cur.number())
        cur.expect("]")
        marks = tuple(idxs)
    cur.expect(")")
    cur.skip_ws()
    if cur.pos != len(cur.text):
        raise ParseError("unexpected trailing text", cur.pos)

    base = DataSet(degree, g0, rotation, tuple(pairs))
    if sign is None and marks is None:
        return base
    if sign is None:
        raise ParseError("a marks list requires a sign on the degree", 0)
    if marks is None:
        raise ParseError("a sign on the degree requires a marks list", 0)
    return MarkedDataSet(base, sign, marks)


def format_data_set(d: DataSet | MarkedDataSet) -> str:
    """Canonical text rendering (inverse of :func:`parse_data_set`)."""
    marked = isinstance(d, MarkedDataSet)
    base = d.base if marked else d
    head = str(base.degree)
    if marked:
        head += f"_{d.sign}"
    head += f",{base.quotient_genus}"
    if base.rotation:
        head += f",{base.rotation}"
    body = ",".join(f"({p.c},{p.order})" for p in base.cone_pairs) or "-"
    tail = f",[{','.join(str(m) for m in d.marks)}]" if marked else ""
    return f"({head};{body}{tail})"


# --- JSON form -------------------------------------------------------------


def data_set_to_json(d: DataSet | MarkedDataSet) -> dict:
    marked = isinstance(d, MarkedDataSet)
    base = d.base if marked else d
    obj = {
        "degree": base.degree,
        "quotient_genus": base.quotient_genus,
        "rotation": base.rotation,
        "cone_pairs": [[p.c, p.order] for p in base.cone_pairs],
    }
    if marked:
        obj["sign"] = d.sign
        obj["marks"] = list(d.marks)
    return obj


def data_set_from_json(obj: dict) -> DataSet | MarkedDataSet:
    try:
        base = DataSet(
            obj["degree"], obj["quotient_genus"], obj["rotation"],
            tuple(ConePair(c, n) for c, n in obj["cone_pairs"]),
        )
    except KeyError as e:
        raise ValueError(f"missing data set field {e.args[0]!r}") from None
    if "sign" in obj or "marks" in obj:
        if not ("sign" in obj and "marks" in obj):
            raise ValueError("marked data sets need both 'sign' and 'marks'")
        return MarkedDataSet(base, obj["sign"], tuple(obj["marks"]))
    return base


def validation_report_to_json(r: ValidationReport) -> dict:
    return {"valid": r.valid,
            "violations": [{"condition": c, "detail": t} for c, t in r.violations]}


def dumps(d: DataSet | MarkedDataSet) -> str:
    return json.dumps(data_set_to_json(d), sort_keys=True)
