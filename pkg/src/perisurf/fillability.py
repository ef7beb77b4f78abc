"""Fillability classification and convex annulus profiles.

The open books carried by marked data sets come with a short list of
sufficient criteria: positive extensions over irreducible pieces and over
positively glued assemblies support Stein fillable structures, positive
twist words with small enough slopes do as well, and negative extensions
whose integral resolution is left-veering are overtwisted.  When no
criterion applies the verdict is ``Unknown`` — the criteria are one-sided.

The second half of the module builds and checks the plane curves
``r -> (f(r), g(r))`` used to model a filling near a binding orbit of slope
``q/p``: ``f dg - g df > 0`` away from the core and ``p f' + q g' < 0``
everywhere.  Verification is numerical on a sample grid with an explicit
tolerance; values inside the tolerance band are reported as inconclusive
rather than silently passed or failed.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from itertools import product

from .core import MarkedDataSet, classify
from .gluing import Assembly, assemble
from .openbook import (
    OpenBookDescriptor,
    UnsupportedResolution,
    Veering,
    integral_resolution,
    page_descriptor,
    surgery_description,
    veering,
)

VERDICTS = ("SteinFillable", "StronglyFillable", "Overtwisted", "Unknown")

CERTIFICATES = (
    "positive-irreducible",
    "positive-assembly",
    "positive-twist-stein",
    "positive-twist-strong",
    "left-veering-resolution",
    "none",
)


@dataclass(frozen=True)
class FillabilityVerdict:
    """Outcome of one classification rule (or a merge of several).

    ``certificate`` names the rule that produced a definite verdict and is
    ``"none"`` exactly when the verdict is ``Unknown``.  ``hypotheses``
    records each condition checked together with whether it held.
    """

    verdict: str
    certificate: str
    hypotheses: tuple[tuple[str, bool], ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.certificate not in CERTIFICATES:
            raise ValueError(f"unknown certificate {self.certificate!r}")
        if (self.verdict == "Unknown") != (self.certificate == "none"):
            raise ValueError("Unknown verdicts carry no certificate and "
                             "definite ones need one")
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))
        object.__setattr__(self, "notes", tuple(self.notes))


def verdict_to_json(v: FillabilityVerdict) -> dict:
    return {
        "verdict": v.verdict,
        "certificate": v.certificate,
        "hypotheses": [[name, held] for name, held in v.hypotheses],
        "notes": list(v.notes),
    }


def classify_irreducible(m: MarkedDataSet) -> FillabilityVerdict:
    """Classify the contact structure of a marked irreducible data set.

    A positive extension is Stein fillable outright.  A negative extension
    is resolved integrally when every marked orbit rotates by ``-1/order``;
    the resolved word is a product of negative boundary twists, hence
    left-veering, and the structure is overtwisted.
    """
    label = classify(m.base).label
    if label != "type1-irreducible":
        raise ValueError(f"expected an irreducible type 1 data set, got {label}")

    if m.sign == "+":
        notes = []
        if any(m.base.cone_pairs[j - 1].order < m.base.degree for j in m.marks):
            notes.append("permuted marked orbits: the positive extension "
                         "still fills, rotating the orbit as one binding")
        return FillabilityVerdict(
            "SteinFillable", "positive-irreducible",
            (("positive extension", True),
             ("irreducible type 1 base", True)),
            tuple(notes),
        )

    descriptor = page_descriptor(m)
    try:
        resolved = integral_resolution(descriptor)
    except UnsupportedResolution as exc:
        return FillabilityVerdict(
            "Unknown", "none",
            (("negative extension", True),
             ("integral resolution", False)),
            (str(exc),),
        )
    if veering(resolved) is not Veering.LEFT:
        return FillabilityVerdict(
            "Unknown", "none",
            (("negative extension", True),
             ("integral resolution", True),
             ("left-veering monodromy", False)),
        )
    twist_count = sum(1 for t in resolved.monodromy.twists()
                      if t.curve.startswith("resolve["))
    return FillabilityVerdict(
        "Overtwisted", "left-veering-resolution",
        (("negative extension", True),
         ("integral resolution", True),
         ("left-veering monodromy", True)),
        (f"left-veering resolution: {twist_count} negative boundary twists",),
    )


def classify_assembly(a: Assembly) -> FillabilityVerdict:
    """Classify the contact structure supported by a glued assembly.

    The positive gluing criterion asks for positive pieces whose marked
    orbits are all invariant, gluings that never exhaust both sides of a
    junction, no self-gluings, and a marked orbit still left on the result;
    the monodromy is then a positive word and the structure Stein fillable.
    """
    result = assemble(a)
    all_positive = all(p.sign == "+" for p in a.pieces)
    invariant = all(p.base.cone_pairs[j - 1].order == p.base.degree
                    for p in a.pieces for j in p.marks)
    junction_free = all(
        result.ledger.surviving(e.left[0]) or result.ledger.surviving(e.right[0])
        for e in a.edges)
    no_self = not a.self_edges
    marks_remain = bool(result.data_set.marks)

    hypotheses = (
        ("all pieces positive", all_positive),
        ("all marked orbits invariant", invariant),
        ("junction keeps a free mark", junction_free),
        ("no self gluings", no_self),
        ("marked boundary remains", marks_remain),
    )
    if all(held for _, held in hypotheses):
        return FillabilityVerdict(
            "SteinFillable", "positive-assembly", hypotheses,
            ("junction curves are compressible to positive twists",),
        )
    return FillabilityVerdict("Unknown", "none", hypotheses)


def classify_positive_word(d: OpenBookDescriptor) -> FillabilityVerdict:
    """Classify an open book whose monodromy is a positive twist word.

    Slopes strictly between zero and one on every binding orbit allow
    legendrian surgery presentations and give a Stein filling; a connected
    binding rotating positively still gives a strong filling.
    """
    if not d.positive_word:
        raise ValueError("the monodromy word is not positive")

    entries = surgery_description(d).entries
    stein_slopes = all(e.kind == "rational" and e.legendrian_realizable
                       for e in entries)
    connected = d.boundary_count == 1
    positive_rotation = all(o.per_period_slope > 0 for o in d.boundary_orbits)

    if stein_slopes:
        notes = []
        if connected:
            notes.append("connected binding: also certified by "
                         "positive-twist-strong")
        return FillabilityVerdict(
            "SteinFillable", "positive-twist-stein",
            (("positive monodromy word", True),
             ("slopes admit legendrian surgery", True)),
            tuple(notes),
        )
    if connected and positive_rotation:
        return FillabilityVerdict(
            "StronglyFillable", "positive-twist-strong",
            (("positive monodromy word", True),
             ("slopes admit legendrian surgery", False),
             ("connected positively rotating binding", True)),
        )
    return FillabilityVerdict(
        "Unknown", "none",
        (("positive monodromy word", True),
         ("slopes admit legendrian surgery", stein_slopes),
         ("connected positively rotating binding",
          connected and positive_rotation)),
    )


_RANK = {"Unknown": 0, "Overtwisted": 1, "StronglyFillable": 2,
         "SteinFillable": 3}


def classify_marked(m: MarkedDataSet) -> FillabilityVerdict:
    """Run every applicable rule on a marked data set and keep the strongest.

    Rules that do not apply (wrong action class, non-positive word) are
    skipped rather than treated as failures; when nothing fires the verdict
    is ``Unknown``.
    """
    fired: list[FillabilityVerdict] = []
    try:
        fired.append(classify_irreducible(m))
    except ValueError:
        pass
    descriptor = page_descriptor(m)
    if descriptor.positive_word:
        fired.append(classify_positive_word(descriptor))

    definite = [v for v in fired if v.verdict != "Unknown"]
    if not definite:
        hypotheses = tuple(h for v in fired for h in v.hypotheses)
        notes = tuple(n for v in fired for n in v.notes)
        return FillabilityVerdict("Unknown", "none", hypotheses, notes)

    best = max(definite, key=lambda v: _RANK[v.verdict])
    others = [v.certificate for v in definite if v is not best]
    notes = best.notes
    if others:
        notes = notes + tuple(f"also certified by {c}" for c in others)
    return FillabilityVerdict(best.verdict, best.certificate,
                              best.hypotheses, notes)


# --- convex annulus profiles -------------------------------------------------

_BINDING_END = 0.25
_COLLAR_START = 0.75


@dataclass(frozen=True)
class ProfilePair:
    """Sampled curve ``r -> (f0(r), g0(r))`` modelling a filling profile.

    The binding arc near ``r = 0`` caps off the orbit, the collar near
    ``r = 1`` runs along direction ``(-p, -q)`` displaced ``K`` steps
    perpendicular to it (a usable profile ends in the corner ``f < 0 < g``,
    which the verifier checks), and a Hermite arc joins the two.
    """

    grid: tuple[float, ...]
    f0: tuple[float, ...]
    g0: tuple[float, ...]
    p: int
    q: int
    K: int
    H: float


@dataclass(frozen=True)
class ConditionReport:
    """Numerical check of the contact and symplectic inequalities.

    ``first_violation`` is ``(r, condition, value)`` for the earliest
    definite failure; samples whose margin is inside the tolerance land in
    ``inconclusive`` instead of deciding either way.
    """

    contact_ok: bool
    symplectic_ok: bool
    first_violation: tuple[float, str, float] | None
    inconclusive: tuple[tuple[float, str, float], ...]

    @property
    def ok(self) -> bool:
        return self.contact_ok and self.symplectic_ok


def _hermite(t: float, va: float, da: float, vb: float, db: float,
             width: float) -> float:
    h00 = 2 * t ** 3 - 3 * t ** 2 + 1
    h10 = t ** 3 - 2 * t ** 2 + t
    h01 = -2 * t ** 3 + 3 * t ** 2
    h11 = t ** 3 - t ** 2
    return h00 * va + h10 * width * da + h01 * vb + h11 * width * db


def _assemble_profile(p: int, q: int, K: int, H: float, peak: float = 1.0,
                      samples: int = 1024) -> ProfilePair:
    """Build the three-arc profile; no sign restriction on ``p`` here.

    Construction never fails on shape grounds: a collar offset that misses
    the corner still produces a curve, and the verifier rejects it.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    a, b = _BINDING_END, _COLLAR_START
    fa, dfa = 2 * H - a * a, -2 * a
    ga, dga = a * a, 2 * a
    fb, dfb = -b * p - q * K, float(-p)
    gb, dgb = -b * q + p * K, float(-q)
    bump_scale = (peak - 1.0) * max(1.0, abs(gb))

    grid, f0, g0 = [], [], []
    for i in range(samples):
        r = i / (samples - 1)
        grid.append(r)
        if r <= a:
            f0.append(2 * H - r * r)
            g0.append(r * r)
        elif r >= b:
            f0.append(-r * p - q * K)
            g0.append(-r * q + p * K)
        else:
            t = (r - a) / (b - a)
            f0.append(_hermite(t, fa, dfa, fb, dfb, b - a))
            g = _hermite(t, ga, dga, gb, dgb, b - a)
            g0.append(g + bump_scale * 16 * t * t * (1 - t) * (1 - t))
    return ProfilePair(tuple(grid), tuple(f0), tuple(g0), p, q, K, H)


def _default_twist_count(p: int, q: int) -> int:
    # smallest positive K putting the collar endpoint in the right
    # half-planes, with one unit of margin when the margin keeps it there
    limit = 4 * (abs(p) + abs(q)) + 4
    for k in range(1, limit + 1):
        if -p - q * k < 0 < -q + p * k:
            if -p - q * (k + 1) < 0 < -q + p * (k + 1):
                return k + 1
            return k
    raise ValueError(
        f"no positive collar offset K satisfies -p - qK < 0 < -q + pK "
        f"for (p, q) = ({p}, {q}); pass K explicitly")


def build_profile(p: int, q: int, K: int | None = None,
                  H: float | None = None, *, peak: float = 1.0,
                  samples: int = 1024) -> ProfilePair:
    """Build the standard profile for a binding orbit of slope ``q/p``.

    ``p`` must be positive and coprime to ``q``.  ``K`` defaults to the
    smallest workable collar offset (with a unit of margin when possible)
    and ``H`` to a binding height clearing the collar values.
    """
    if p <= 0:
        raise ValueError("p must be positive; the slope is taken as q/p")
    if math.gcd(abs(p), abs(q)) != 1:
        raise ValueError(f"slope {q}/{p} is not in lowest terms")
    if K is None:
        K = _default_twist_count(p, q)
    if H is None:
        H = 1.0 + max(1.0, abs(-p - q * K))
    return _assemble_profile(p, q, K, H, peak=peak, samples=samples)


def _derivatives(grid: tuple[float, ...],
                 values: tuple[float, ...]) -> list[float]:
    n = len(grid)
    out = [0.0] * n
    out[0] = (values[1] - values[0]) / (grid[1] - grid[0])
    out[-1] = (values[-1] - values[-2]) / (grid[-1] - grid[-2])
    for i in range(1, n - 1):
        out[i] = (values[i + 1] - values[i - 1]) / (grid[i + 1] - grid[i - 1])
    return out


def verify_profile(pp: ProfilePair, tolerance: float = 1e-9) -> ConditionReport:
    """Check the contact and symplectic inequalities on the sample grid.

    The contact form condition ``f g' - f' g > 0`` is checked away from the
    first grid cell (the binding core is a coordinate degeneracy); the
    symplectic condition ``p f' + q g' < 0`` is checked everywhere.  The
    collar endpoint must also land strictly inside the corner
    ``f(1) < 0 < g(1)`` for the symplectic filling to close up; being exact
    integer arithmetic this is checked without tolerance and reported under
    the condition id ``"corner"``.
    """
    if len(pp.grid) < 64:
        raise ValueError("verification needs at least 64 samples")
    df = _derivatives(pp.grid, pp.f0)
    dg = _derivatives(pp.grid, pp.g0)

    contact_ok, symplectic_ok = True, True
    first_violation = None
    inconclusive = []
    for i, r in enumerate(pp.grid):
        checks = []
        if i >= 1:
            checks.append(("contact", pp.f0[i] * dg[i] - df[i] * pp.g0[i], 1))
        checks.append(("symplectic", pp.p * df[i] + pp.q * dg[i], -1))
        for name, value, wanted_sign in checks:
            if abs(value) <= tolerance:
                inconclusive.append((r, name, value))
            elif (value > 0) != (wanted_sign > 0):
                if name == "contact":
                    contact_ok = False
                else:
                    symplectic_ok = False
                if first_violation is None:
                    first_violation = (r, name, value)

    corner_f, corner_g = -pp.p - pp.q * pp.K, -pp.q + pp.p * pp.K
    if not corner_f < 0 < corner_g:
        symplectic_ok = False
        if first_violation is None:
            bad = corner_f if corner_f >= 0 else corner_g
            first_violation = (1.0, "corner", float(bad))
    return ConditionReport(contact_ok, symplectic_ok, first_violation,
                           tuple(inconclusive))


def binding_symplectic_deviation(pp: ProfilePair) -> float:
    """Largest gap between the numeric symplectic form and its closed form
    ``2r(q - p)`` on the interior of the binding arc."""
    df = _derivatives(pp.grid, pp.f0)
    dg = _derivatives(pp.grid, pp.g0)
    worst = 0.0
    for i in range(1, len(pp.grid) - 1):
        r = pp.grid[i]
        if pp.grid[i + 1] >= _BINDING_END:
            break
        numeric = pp.p * df[i] + pp.q * dg[i]
        worst = max(worst, abs(numeric - 2 * r * (pp.q - pp.p)))
    return worst


def search_profiles(p: int, q: int, *, candidates: int = 1000,
                    samples: int = 256,
                    tolerance: float = 1e-9) -> ProfilePair | None:
    """Scan a grid of ``(K, H, peak)`` shapes for a verifying profile.

    Unlike :func:`build_profile` this accepts negative ``p`` so that both
    orientations of a slope can be probed; it returns the first profile
    passing :func:`verify_profile`, or ``None`` when every candidate fails.
    """
    if p == 0:
        raise ValueError("p must be nonzero")
    if math.gcd(abs(p), abs(q)) != 1:
        raise ValueError(f"slope {q}/{p} is not in lowest terms")
    peaks = (1.0, 0.5, 0.75, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0)
    tried = 0
    for K, H, peak in product(range(1, 11), range(1, 11), peaks):
        if tried >= candidates:
            break
        tried += 1
        if not -p - q * K < 0 < -q + p * K:
            continue  # endpoint misses the corner; verification cannot pass
        pp = _assemble_profile(p, q, K, float(H), peak=peak,
                               samples=samples)
        if verify_profile(pp, tolerance).ok:
            return pp
    return None


def write_profile_csv(pp: ProfilePair, path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["r", "f0", "g0"])
        for r, f, g in zip(pp.grid, pp.f0, pp.g0):
            writer.writerow([repr(r), repr(f), repr(g)])
