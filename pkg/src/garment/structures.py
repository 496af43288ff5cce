"""The five 4-point structures: classification, enumeration, regions, status."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels
from ._kernels_py import canonical_quadruple
from .geom import CollinearInput, Color, ColoredPointSet, Point, convex_hull, orient


class Degenerate(CollinearInput):
    pass


class StructureKind(enum.IntEnum):
    CRAVAT = 0
    NECKLACE = 1
    BOWTIE = 2
    SKIRT = 3
    PANT = 4

    @property
    def variants(self) -> int:
        return (1, 4, 2, 1, 3)[self]

    @property
    def convex(self) -> bool:
        return self <= StructureKind.BOWTIE

    @classmethod
    def parse(cls, text: str) -> "StructureKind":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown structure kind {text!r}") from None


ALL_KINDS = frozenset(StructureKind)


def parse_kinds(text: str | Iterable[str]) -> frozenset[StructureKind]:
    """``"pant,bowtie"`` -> {PANT, BOWTIE}; empty string -> empty set."""
    items = text.split(",") if isinstance(text, str) else list(text)
    return frozenset(StructureKind.parse(t) for t in items if str(t).strip())


def kind_mask(kinds: Iterable[StructureKind]) -> int:
    return sum(1 << int(k) for k in set(kinds))


def kinds_label(kinds: Iterable[StructureKind]) -> str:
    return ",".join(k.name.lower() for k in sorted(kinds))


@dataclass(frozen=True)
class QuadrupleClass:
    """Either convex (``hull`` has 4 entries) or non-convex (3 apexes + ``interior``).

    Entries are positions into the quadruple that was classified.
    """

    convex: bool
    hull: tuple[int, ...]
    interior: int | None = None


@dataclass(frozen=True, order=True)
class StructureInstance:
    """One structure on four point indices.

    ``points`` is in canonical order: for convex kinds the hull counterclockwise
    starting at the smallest index; for skirt/pant the three apexes
    counterclockwise from the smallest index, then the interior point.
    Variants: necklace k shares hull edge (h_k, h_k+1); bowtie 0 pairs hull edges
    (h1 h2),(h3 h0), bowtie 1 pairs (h0 h1),(h2 h3); pant j breaks apex edge
    (a_j, a_j+1).
    """

    points: tuple[int, int, int, int]
    kind: StructureKind
    variant: int = 0

    def __post_init__(self):
        if not 0 <= self.variant < self.kind.variants:
            raise ValueError(f"{self.kind.name} has no variant {self.variant}")

    @property
    def quadruple(self) -> frozenset[int]:
        return frozenset(self.points)

    def describe(self) -> str:
        return f"{self.kind.name.lower()}[{self.variant}]{list(self.points)}"

    @classmethod
    def from_row(cls, row) -> "StructureInstance":
        return cls(tuple(int(v) for v in row[:4]), StructureKind(int(row[4])), int(row[5]))

    def to_row(self) -> tuple[int, ...]:
        return (*self.points, int(self.kind), self.variant)


@dataclass(frozen=True)
class StructureStatus:
    monochromatic: bool
    same_color_clean: bool
    blocked: bool

    @property
    def empty(self) -> bool:
        return self.monochromatic and self.same_color_clean and not self.blocked


def classify_quadruple(q: Sequence[Point]) -> QuadrupleClass:
    if len(q) != 4:
        raise ValueError("need exactly 4 points")
    for a, b, c in itertools.combinations(range(4), 3):
        if orient(q[a], q[b], q[c]) == 0:
            raise Degenerate(f"points {a}, {b}, {c} of the quadruple are collinear")
    hull = convex_hull(q)
    if len(hull) == 4:
        return QuadrupleClass(True, tuple(hull))
    (inner,) = set(range(4)) - set(hull)
    return QuadrupleClass(False, tuple(hull), inner)


def _local_table(points: Sequence[Point], idx: Sequence[int]):
    """Sign table restricted to ``idx``, keyed by global index."""
    return {
        p: {a: {b: orient(points[a], points[b], points[p]) for b in idx} for a in idx}
        for p in idx
    }


def canonical_order(points: Sequence[Point], idx: Sequence[int]) -> tuple[bool, tuple[int, ...]]:
    a, b, c, d = sorted(idx)
    for tri in itertools.combinations((a, b, c, d), 3):
        if orient(*(points[i] for i in tri)) == 0:
            raise Degenerate(f"points {tri} are collinear")
    return canonical_quadruple(_local_table(points, (a, b, c, d)), a, b, c, d)


def quadruple_instances(points: Sequence[Point], idx: Sequence[int]) -> list[StructureInstance]:
    """All structure instances on the quadruple ``idx`` of ``points``."""
    convex, h = canonical_order(points, idx)
    kinds = (StructureKind.CRAVAT, StructureKind.NECKLACE, StructureKind.BOWTIE) if convex else (
        StructureKind.SKIRT, StructureKind.PANT)
    return [StructureInstance(h, k, v) for k in kinds for v in range(k.variants)]


def instances_on_quadruple(q: Sequence[Point]) -> list[StructureInstance]:
    """Instances on a bare quadruple; indices refer to positions 0..3 of ``q``."""
    return quadruple_instances(list(q), range(4))


def _closed_tri(points, p, a, b, c) -> bool:
    return orient(points[a], points[b], p) >= 0 and orient(points[b], points[c], p) >= 0 and orient(points[c], points[a], p) >= 0


def _closed_bowtie_cell(points, p, h, k) -> bool:
    a, b, c, d = h[k], h[(k + 1) % 4], h[(k + 2) % 4], h[(k + 3) % 4]
    return (orient(points[a], points[b], p) >= 0 and orient(points[a], points[c], p) <= 0
            and orient(points[b], points[d], p) >= 0)


def region_contains(inst: StructureInstance, points: Sequence[Point], p) -> bool:
    """Closed-region membership of the probe ``p`` (int or rational coordinates).

    The bowtie test never constructs the diagonal crossing: each of its two
    triangles is cut out by a hull edge and the two diagonals.
    """
    h = inst.points
    kind = inst.kind
    if kind is StructureKind.CRAVAT:
        return all(orient(points[h[i]], points[h[(i + 1) % 4]], p) >= 0 for i in range(4))
    if kind is StructureKind.NECKLACE:
        k = inst.variant
        a, b = h[k], h[(k + 1) % 4]
        return _closed_tri(points, p, a, b, h[(k + 2) % 4]) or _closed_tri(points, p, a, b, h[(k + 3) % 4])
    if kind is StructureKind.BOWTIE:
        cells = (1, 3) if inst.variant == 0 else (0, 2)
        return any(_closed_bowtie_cell(points, p, h, k) for k in cells)
    if kind is StructureKind.SKIRT:
        return _closed_tri(points, p, h[0], h[1], h[2])
    j = inst.variant
    a, b, d = points[h[j]], points[h[(j + 1) % 3]], points[h[3]]
    # the notch is open, but the broken edge between its apexes is not part of the 4-gon either
    notch = orient(a, b, p) >= 0 and orient(b, d, p) > 0 and orient(d, a, p) > 0
    return _closed_tri(points, p, h[0], h[1], h[2]) and not notch


def region_polygons(inst: StructureInstance, points: Sequence[Point]) -> list[list]:
    """Polygons whose union is the region (for drawing). Bowtie -> two triangles."""
    h = [points[i] for i in inst.points]
    kind = inst.kind
    if kind is StructureKind.CRAVAT:
        return [h]
    if kind is StructureKind.NECKLACE:
        k = inst.variant
        return [[h[k], h[(k + 1) % 4], h[(k + 2) % 4]], [h[k], h[(k + 1) % 4], h[(k + 3) % 4]]]
    if kind is StructureKind.BOWTIE:
        x = line_intersection(h[0], h[2], h[1], h[3])
        cells = (1, 3) if inst.variant == 0 else (0, 2)
        return [[h[k], h[(k + 1) % 4], x] for k in cells]
    if kind is StructureKind.SKIRT:
        return [h[:3]]
    j = inst.variant
    a = h[:3]
    # simple 4-gon: apexes with the interior point spliced into the broken edge
    return [[a[j], h[3], a[(j + 1) % 3], a[(j + 2) % 3]]]


def line_intersection(p1, p2, p3, p4):
    """Exact rational intersection of lines p1p2 and p3p4."""
    from fractions import Fraction

    d = (p2[0] - p1[0]) * (p4[1] - p3[1]) - (p2[1] - p1[1]) * (p4[0] - p3[0])
    if d == 0:
        raise Degenerate("parallel lines")
    t = Fraction((p3[0] - p1[0]) * (p4[1] - p3[1]) - (p3[1] - p1[1]) * (p4[0] - p3[0]), d)
    return (p1[0] + t * (p2[0] - p1[0]), p1[1] + t * (p2[1] - p1[1]))


def structure_status(inst: StructureInstance, cps: ColoredPointSet) -> StructureStatus:
    """Flags relative to the color of the instance's first point."""
    cols = {cps.colors[i] for i in inst.points}
    mono = len(cols) == 1
    color = cps.colors[inst.points[0]]
    clean, blocked = True, False
    members = set(inst.points)
    for i, p in enumerate(cps.points):
        if i in members:
            continue
        if region_contains(inst, cps.points, p):
            if cps.colors[i] is color:
                clean = False
            else:
                blocked = True
    return StructureStatus(mono, clean, blocked)


def _xy(points):
    return [p[0] for p in points], [p[1] for p in points]


def instance_table(points: Sequence[Point], kinds: Iterable[StructureKind] = ALL_KINDS, empty_only: bool = False):
    """Kernel-backed (rows, inside-masks) for point sets of at most 64 points."""
    xs, ys = _xy(points)
    return kernels.instance_table(xs, ys, kind_mask(kinds), empty_only)


def all_instances(points: Sequence[Point], kinds: Iterable[StructureKind] = ALL_KINDS) -> list[StructureInstance]:
    kinds = frozenset(kinds)
    if len(points) <= 64:
        rows, _ = instance_table(points, kinds, empty_only=False)
        return [StructureInstance.from_row(r) for r in rows]
    out = []
    for q in itertools.combinations(range(len(points)), 4):
        out.extend(i for i in quadruple_instances(points, q) if i.kind in kinds)
    return out


def geometrically_empty(points: Sequence[Point], kinds: Iterable[StructureKind]) -> list[StructureInstance]:
    """Instances of the kinds whose closed region holds no other point at all."""
    kinds = frozenset(kinds)
    if not kinds:
        return []
    if len(points) <= 64:
        rows, _ = instance_table(points, kinds, empty_only=True)
        return [StructureInstance.from_row(r) for r in rows]
    out = []
    for inst in all_instances(points, kinds):
        members = set(inst.points)
        if not any(region_contains(inst, points, p) for i, p in enumerate(points) if i not in members):
            out.append(inst)
    return out


def empty_monochromatic_structures(cps: ColoredPointSet, kinds: Iterable[StructureKind]) -> list[StructureInstance]:
    """Every empty monochromatic instance of the kinds, both colors.

    Empty means no fifth point of either color in the closed region, so the
    geometry alone fixes the candidates and the coloring only has to make
    them monochromatic.
    """
    out = []
    for inst in geometrically_empty(cps.points, kinds):
        if len({cps.colors[i] for i in inst.points}) == 1:
            out.append(inst)
    return out
