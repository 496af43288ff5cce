import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from garment.geom import Color, ColoredPointSet, Mode, Point, in_triangle, random_point_set
from garment.structures import (
    ALL_KINDS,
    Degenerate,
    StructureInstance,
    StructureKind,
    all_instances,
    classify_quadruple,
    empty_monochromatic_structures,
    geometrically_empty,
    instances_on_quadruple,
    kind_mask,
    line_intersection,
    parse_kinds,
    quadruple_instances,
    region_contains,
    region_polygons,
    structure_status,
)

from conftest import point_sets

K = StructureKind
SQUARE = [Point(0, 0), Point(10, 0), Point(10, 10), Point(0, 10)]
TRIANGLE_PLUS = [Point(0, 0), Point(12, 0), Point(0, 12), Point(3, 3)]


def oracle_contains(inst, points, p):
    """Membership through explicit triangles (bowtie via the rational diagonal crossing)."""
    h = [points[i] for i in inst.points]
    tris = []
    if inst.kind is K.CRAVAT:
        tris = [(h[0], h[1], h[2]), (h[0], h[2], h[3])]
    elif inst.kind is K.NECKLACE:
        k = inst.variant
        tris = [(h[k], h[(k + 1) % 4], h[(k + 2) % 4]), (h[k], h[(k + 1) % 4], h[(k + 3) % 4])]
    elif inst.kind is K.BOWTIE:
        x = line_intersection(h[0], h[2], h[1], h[3])
        cells = (1, 3) if inst.variant == 0 else (0, 2)
        tris = [(h[k], h[(k + 1) % 4], x) for k in cells]
    elif inst.kind is K.SKIRT:
        tris = [tuple(h[:3])]
    else:
        j = inst.variant
        a, b, c, d = h[j], h[(j + 1) % 3], h[(j + 2) % 3], h[3]
        tris = [(a, d, c), (d, b, c)]
    return any(in_triangle(p, *t, mode=Mode.CLOSED) for t in tris)


def test_kind_metadata():
    assert [k.variants for k in K] == [1, 4, 2, 1, 3]
    assert K.BOWTIE.convex and not K.PANT.convex
    assert parse_kinds("pant, Bowtie") == {K.PANT, K.BOWTIE}
    assert parse_kinds("") == frozenset()
    assert kind_mask({K.CRAVAT, K.PANT}) == 0b10001
    with pytest.raises(ValueError):
        parse_kinds("sock")


def test_classify():
    c = classify_quadruple(SQUARE)
    assert c.convex and sorted(c.hull) == [0, 1, 2, 3]
    c = classify_quadruple(TRIANGLE_PLUS)
    assert not c.convex and c.interior == 3
    with pytest.raises(Degenerate):
        classify_quadruple([Point(0, 0), Point(1, 1), Point(2, 2), Point(0, 5)])


def test_instances_per_quadruple():
    assert len(instances_on_quadruple(SQUARE)) == 1 + 4 + 2
    assert len(instances_on_quadruple(TRIANGLE_PLUS)) == 1 + 3
    inst = instances_on_quadruple(TRIANGLE_PLUS)[0]
    assert inst.points == (0, 1, 2, 3)


def test_variant_validation():
    with pytest.raises(ValueError):
        StructureInstance((0, 1, 2, 3), K.BOWTIE, 2)
    inst = StructureInstance((0, 1, 2, 3), K.NECKLACE, 3)
    assert StructureInstance.from_row(inst.to_row()) == inst


def test_square_regions():
    center = (5, 5)
    by = {(i.kind, i.variant): i for i in instances_on_quadruple(SQUARE)}
    assert region_contains(by[K.CRAVAT, 0], SQUARE, center)
    assert all(region_contains(by[K.NECKLACE, k], SQUARE, center) for k in range(4))
    # the crossing point lies on both bowtie variants' closed regions
    assert region_contains(by[K.BOWTIE, 0], SQUARE, center)
    assert region_contains(by[K.BOWTIE, 1], SQUARE, center)
    # (5, 2) is in the cell on the bottom edge (0, 1): that is bowtie variant 1
    assert region_contains(by[K.BOWTIE, 1], SQUARE, (5, 2))
    assert not region_contains(by[K.BOWTIE, 0], SQUARE, (5, 2))
    # necklace 0 is on edge (0,1) and covers all but the top cell
    assert not region_contains(by[K.NECKLACE, 0], SQUARE, (5, 8))
    assert region_contains(by[K.NECKLACE, 2], SQUARE, (5, 8))


def test_pant_regions():
    pants = [i for i in instances_on_quadruple(TRIANGLE_PLUS) if i.kind is K.PANT]
    # the notch of pant j is the open triangle (a_j, a_j+1, d)
    probe = (4, 1)  # between the apex edge (0,0)-(12,0) and the interior point (3,3)
    inside = [region_contains(p, TRIANGLE_PLUS, probe) for p in pants]
    assert inside.count(False) == 1
    for p in pants:
        assert region_contains(p, TRIANGLE_PLUS, TRIANGLE_PLUS[3])


@given(point_sets(4, 4, coord=60))
@settings(max_examples=60, deadline=None)
def test_region_membership_matches_triangle_oracle(pts):
    rng = random.Random(hash(tuple(pts)) & 0xFFFF)
    for inst in instances_on_quadruple(pts):
        probes = [(rng.randrange(-5, 66), rng.randrange(-5, 66)) for _ in range(40)]
        probes += [(Fraction(rng.randrange(-300, 3300), 50), Fraction(rng.randrange(-300, 3300), 50)) for _ in range(20)]
        for poly in region_polygons(inst, pts):  # vertices and edge midpoints are boundary points
            probes += list(poly)
            probes += [((poly[i][0] + poly[i - 1][0]) / 2, (poly[i][1] + poly[i - 1][1]) / 2) for i in range(len(poly))]
        for q in probes:
            assert region_contains(inst, pts, q) == oracle_contains(inst, pts, q), (inst, q)


def brute_empty(points, kinds):
    out = set()
    for quad in itertools.combinations(range(len(points)), 4):
        for inst in quadruple_instances(points, quad):
            if inst.kind in kinds and not any(
                oracle_contains(inst, points, p) for i, p in enumerate(points) if i not in quad
            ):
                out.add(inst)
    return out


@given(point_sets(4, 8, coord=100))
@settings(max_examples=40, deadline=None)
def test_geometrically_empty_matches_oracle(pts):
    for kinds in (ALL_KINDS, {K.PANT, K.BOWTIE}):
        assert set(geometrically_empty(pts, kinds)) == brute_empty(pts, kinds)


def test_all_instances_counts(rng):
    pts = random_point_set(9, rng, 500)
    insts = all_instances(pts)
    convex = sum(i.kind is K.CRAVAT for i in insts)
    skirts = sum(i.kind is K.SKIRT for i in insts)
    assert convex + skirts == 126
    assert len(insts) == 7 * convex + 4 * skirts


@pytest.mark.slow
def test_large_set_python_path(rng):
    pts = random_point_set(66, rng, 10**5)
    sub = pts[:6]
    assert set(geometrically_empty(sub, {K.CRAVAT})) == brute_empty(sub, {K.CRAVAT})
    few = geometrically_empty(pts[:66], {K.SKIRT})
    assert all(not any(region_contains(i, pts, p) for j, p in enumerate(pts) if j not in i.points) for i in few[:20])


def test_structure_status_flags():
    pts = SQUARE + [Point(5, 2), Point(5, 8)]
    cols = [Color.RED] * 4 + [Color.BLUE, Color.RED]
    cps = ColoredPointSet(pts, cols)
    by = {(i.kind, i.variant): i for i in quadruple_instances(pts, (0, 1, 2, 3))}
    s = structure_status(by[K.CRAVAT, 0], cps)
    assert s.monochromatic and not s.same_color_clean and s.blocked and not s.empty
    s = structure_status(by[K.BOWTIE, 1], cps)  # bottom and top cells
    assert s.monochromatic and not s.same_color_clean and s.blocked
    assert structure_status(by[K.BOWTIE, 0], cps).empty  # left and right cells
    s = structure_status(by[K.NECKLACE, 0], cps)  # misses the top cell, holds the blue point
    assert s.blocked and s.same_color_clean


def test_empty_monochromatic_both_colors():
    cps = ColoredPointSet(SQUARE, [Color.BLUE] * 4)
    found = empty_monochromatic_structures(cps, {K.CRAVAT})
    assert len(found) == 1
    assert empty_monochromatic_structures(cps.swapped(), {K.CRAVAT}) == found
    mixed = ColoredPointSet(SQUARE, [Color.BLUE] * 3 + [Color.RED])
    assert empty_monochromatic_structures(mixed, ALL_KINDS) == []
