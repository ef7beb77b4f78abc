"""Polygon models for irreducible type 1 data sets.

An irreducible type 1 data set ``(n,0;(c1,n1),(c2,n2),(c3,n))`` acts on a
surface assembled from a single rotation-symmetric polygon: ``2n`` sides in
general, ``n`` sides when one of the first two cone orders is 2.  The side
pairing is generated by an explicit index formula; we never trust it blindly
— :func:`verify_realization` recomputes the surface genus from an Euler
characteristic count over the identified polygon corners and checks that the
pairing is a fixed-point-free involution commuting with the rotation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import DataSet, canonicalize, classify, genus, mod_inverse, validate


@dataclass(frozen=True)
class PolygonPresentation:
    """A polygon with paired sides and a rotation acting on it.

    ``pairing[i-1]`` is the 1-based partner of side ``i``; every side is
    glued to its partner with reversed orientation (``orientation_reversed``
    records this per side).  ``rotation_step`` is the index shift realizing
    the rotation.  ``q``, ``j`` and ``z_offset`` are the pairing parameters;
    ``outside_theorem`` flags inputs of genus < 2, where the polygon model
    is emitted on a best-effort basis.
    """

    sides: int
    pairing: tuple[int, ...]
    orientation_reversed: tuple[bool, ...]
    rotation_step: int
    degree: int
    q: int
    j: int
    z_offset: int
    outside_theorem: bool = False


@dataclass(frozen=True)
class RealizationReport:
    """Outcome of verifying a polygon presentation against its data set."""

    euler_genus: int | None
    rh_genus: int
    involution_ok: bool
    equivariance_ok: bool

    @property
    def ok(self) -> bool:
        return (self.involution_ok and self.equivariance_ok
                and self.euler_genus == self.rh_genus)


def polygon_realization(d: DataSet) -> PolygonPresentation:
    """Side-paired polygon realizing an irreducible type 1 data set.

    The data set is canonicalized first, so the full-order cone pair sits
    last and serves as the rotation center.  Raises ``ValueError`` unless
    the input is a valid irreducible type 1 data set.  A pairing that fails
    its own involution check is still returned — :func:`verify_realization`
    reports the failure rather than this function repairing it.
    """
    canon, _ = canonicalize(d)
    cls = classify(canon)
    if not (cls.kind == "type1" and cls.irreducible):
        raise ValueError(f"polygon model needs an irreducible type 1 data set, "
                         f"got {cls.label}: {canon}")
    report = validate(canon)
    if not report.valid:
        raise ValueError(f"cannot realize an invalid data set: "
                         f"{'; '.join(t for _, t in report.violations)}")

    n = canon.degree
    p1, p2, p3 = canon.cone_pairs
    q = (n // p2.order) * mod_inverse(p3.c, n) % n
    j = p2.order - p2.c
    z_offset = (q * j) % n
    doubled = p1.order != 2 and p2.order != 2
    k = 2 * n if doubled else n

    pairing = [0] * k
    if doubled:
        # odd side 2m+1 is glued, reversed, onto even side 2z
        for m in range(n):
            z = (m + z_offset) % n or n
            x, y = 2 * m + 1, 2 * z
            pairing[x - 1] = y
            pairing[y - 1] = x
    else:
        # side m+1 is glued, reversed, onto side z; this map need not be an
        # involution for arbitrary parameters, so it is recorded raw
        for m in range(n):
            z = (m + z_offset) % n or n
            pairing[m] = z

    rotation_step = (k // n) * mod_inverse(p3.c, n) % k
    return PolygonPresentation(
        sides=k,
        pairing=tuple(pairing),
        orientation_reversed=(True,) * k,
        rotation_step=rotation_step,
        degree=n,
        q=q,
        j=j,
        z_offset=z_offset,
        outside_theorem=genus(canon) < 2,
    )


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def components(self) -> int:
        return sum(1 for i, p in enumerate(self.parent) if self.find(i) == i)


def verify_realization(p: PolygonPresentation, d: DataSet) -> RealizationReport:
    """Check a presentation against its data set; never raises.

    The genus of the identified polygon is recomputed from scratch: corners
    are merged with union-find according to the side gluings and the Euler
    characteristic ``V - E + F`` is compared with the genus the degree/cone
    data demand.
    """
    k = p.sides
    pairing = p.pairing

    involution_ok = all(
        1 <= pairing[i] <= k
        and pairing[i] != i + 1
        and pairing[pairing[i] - 1] == i + 1
        for i in range(k)
    )

    s = p.rotation_step % k
    equivariance_ok = all(
        (pairing[(i + s) % k] - 1) % k == (pairing[i] - 1 + s) % k
        for i in range(k)
    )

    euler_genus = None
    if involution_ok:
        # side x runs corner x-1 -> corner x (mod k); gluing x reversed onto
        # y identifies start(x) with end(y) and end(x) with start(y)
        uf = _UnionFind(k)
        for x in range(1, k + 1):
            y = pairing[x - 1]
            uf.union(x - 1, y % k)
            uf.union(x % k, y - 1)
        chi = uf.components() - k // 2 + 1
        if chi <= 2 and (2 - chi) % 2 == 0:
            euler_genus = (2 - chi) // 2

    return RealizationReport(
        euler_genus=euler_genus,
        rh_genus=genus(d),
        involution_ok=involution_ok,
        equivariance_ok=equivariance_ok,
    )


def draw_polygon_svg(p: PolygonPresentation, path: str) -> None:
    """Write a picture of the polygon: outline, pairing chords, side labels."""
    import math

    k = p.sides
    size, r = 640, 280
    cx = cy = size / 2

    def corner(i: int) -> tuple[float, float]:
        a = math.tau * i / k - math.pi / 2
        return cx + r * math.cos(a), cy + r * math.sin(a)

    def midpoint(side: int) -> tuple[float, float]:
        x1, y1 = corner(side - 1)
        x2, y2 = corner(side % k)
        return (x1 + x2) / 2, (y1 + y2) / 2

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    outline = " ".join(f"{x:.1f},{y:.1f}" for x, y in (corner(i) for i in range(k)))
    lines.append(f'<polygon points="{outline}" fill="none" stroke="black"/>')

    seen = set()
    pair_index = 0
    for x in range(1, k + 1):
        y = p.pairing[x - 1]
        key = frozenset((x, y))
        if key in seen:
            continue
        seen.add(key)
        hue = (360 * pair_index * 2 // max(1, k)) % 360
        (x1, y1), (x2, y2) = midpoint(x), midpoint(y)
        lines.append(f'<path d="M {x1:.1f} {y1:.1f} Q {cx:.1f} {cy:.1f} '
                     f'{x2:.1f} {y2:.1f}" fill="none" '
                     f'stroke="hsl({hue},70%,45%)" stroke-width="1.5"/>')
        pair_index += 1

    for i in range(1, k + 1):
        mx, my = midpoint(i)
        lx = cx + (mx - cx) * 1.12
        ly = cy + (my - cy) * 1.12
        lines.append(f'<text x="{lx:.1f}" y="{ly:.1f}" font-size="13" '
                     f'text-anchor="middle">{i}</text>')
    lines.append("</svg>")

    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
