"""Convex substructures: k-gons, k-holes, islands, disjoint 4-holes, ES bound."""
from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from . import kernels
from .geom import Color, ColoredPointSet, Point, convex_hull, in_convex_polygon, orient
from .structures import StructureInstance, StructureKind, canonical_order, structure_status


class WrongSize(ValueError):
    pass


class No9Gon(RuntimeError):
    pass


class TooFewPoints(ValueError):
    pass


class OutOfRange(ValueError):
    pass


def _xy(ps):
    return [int(p[0]) for p in ps], [int(p[1]) for p in ps]


# -- k-gons --------------------------------------------------------------------

def largest_convex_subset(ps: Sequence[Point], k: int = 0) -> list[int]:
    """Vertices (ccw) of a largest convex polygon; with k > 0, stop at the first of size >= k."""
    xs, ys = _xy(ps)
    return kernels.max_convex_chain(xs, ys, k)


def find_convex_kgon(ps: Sequence[Point], k: int, subsample: int | None = None, seed: int = 0,
                     attempts: int = 8) -> list[int] | None:
    """k indices in convex position, or None if no convex k-gon exists.

    With ``subsample`` set and more points than that, random subsets of
    growing size are searched first; the full cubic DP is the fallback that
    certifies a None.
    """
    if k < 3:
        raise ValueError("k must be at least 3")
    n = len(ps)
    if n < k:
        return None
    if subsample and n > subsample:
        rng = random.Random(seed)
        size = subsample
        while size < n:
            for _ in range(attempts):
                idx = sorted(rng.sample(range(n), size))
                poly = largest_convex_subset([ps[i] for i in idx], k)
                if len(poly) >= k:
                    return [idx[i] for i in poly[:k]]
            size *= 2
    poly = largest_convex_subset(ps, k)
    return poly[:k] if len(poly) >= k else None


def in_convex_position(ps: Sequence[Point]) -> bool:
    return len(ps) < 3 or len(convex_hull(ps)) == len(ps)


def count_kgons_kholes(ps: Sequence[Point], k: int) -> tuple[int, int]:
    """(convex k-gons, k-holes) via the anchored radial DP."""
    if k < 3:
        raise ValueError("k must be at least 3")
    xs, ys = _xy(ps)
    return kernels.count_convex(xs, ys, k)


def count_kgons_kholes_bruteforce(ps: Sequence[Point], k: int) -> tuple[int, int]:
    """Per-subset hull plus containment scan."""
    gons = holes = 0
    n = len(ps)
    for sub in itertools.combinations(range(n), k):
        pts = [ps[i] for i in sub]
        hull = convex_hull(pts)
        if len(hull) != k:
            continue
        gons += 1
        poly = [pts[i] for i in hull]
        members = set(sub)
        if not any(in_convex_polygon(ps[j], poly) for j in range(n) if j not in members):
            holes += 1
    return gons, holes


def _nonempty_convex_subset(ps: Sequence[Point], k: int):
    n = len(ps)
    for sub in itertools.combinations(range(n), k):
        pts = [ps[i] for i in sub]
        hull = convex_hull(pts)
        if len(hull) != k:
            continue
        poly = [pts[i] for i in hull]
        members = set(sub)
        for j in range(n):
            if j not in members and in_convex_polygon(ps[j], poly):
                return [sub[i] for i in hull], j
    return None


class SixIsland(enum.Enum):
    HAS_6GON = "has-6-gon"
    HAS_NONEMPTY_5GON = "has-nonempty-5-gon"
    FAILS = "fails"


@dataclass(frozen=True)
class SixIslandResult:
    verdict: SixIsland
    witness: tuple[int, ...] = ()
    inside: int | None = None


def six_island_conditions(ps: Sequence[Point]) -> SixIslandResult:
    """Convex 6-gon, else convex 5-gon with a point inside, else FAILS (any size)."""
    six = find_convex_kgon(ps, 6)
    if six is not None:
        return SixIslandResult(SixIsland.HAS_6GON, tuple(six))
    five = _nonempty_convex_subset(ps, 5)
    if five is not None:
        return SixIslandResult(SixIsland.HAS_NONEMPTY_5GON, tuple(five[0]), five[1])
    return SixIslandResult(SixIsland.FAILS)


def six_island_check(ps: Sequence[Point]) -> SixIslandResult:
    if len(ps) != 11:
        raise WrongSize(f"six_island_check needs exactly 11 points, got {len(ps)}")
    return six_island_conditions(ps)


def double_chain(k: int = 5, spread: int = 10, bend: int = 1, height: int | None = None) -> list[Point]:
    """Two facing concave chains of k points each (lower first, then upper).

    Each chain bends toward the other, so every line through two points of one
    chain passes the other chain on a single side.
    """
    mid2 = k - 1  # twice the middle abscissa index, keeps everything integral
    height = height if height is not None else bend * mid2 * mid2 * 4 + 10 * spread
    lower = [Point(spread * 2 * i, -bend * (2 * i - mid2) ** 2) for i in range(k)]
    upper = [Point(spread * 2 * i + spread, height + bend * (2 * i - mid2) ** 2) for i in range(k)]
    return lower + upper


# -- islands ---------------------------------------------------------------------

@dataclass(frozen=True)
class Island:
    members: tuple[int, ...]
    hull: tuple[int, ...]
    r: int
    b: int

    @property
    def hull_size(self) -> int:
        return len(self.hull)

    @property
    def imbalance(self) -> int:
        return abs(self.r - self.b)

    def unbalanced(self, threshold: int = 5) -> bool:
        return self.imbalance >= threshold


def _make_island(cps: ColoredPointSet, members) -> Island:
    members = tuple(sorted(set(members)))
    pts = [cps.points[i] for i in members]
    hull = tuple(members[i] for i in convex_hull(pts)) if len(pts) >= 3 else members
    r = sum(1 for i in members if cps.colors[i] is Color.RED)
    return Island(members, hull, r, len(members) - r)


def island_close(cps: ColoredPointSet, seed: Sequence[int]) -> Island:
    """Smallest island containing ``seed``: add every point in the hull, to a fixpoint."""
    members = set(seed)
    if not members:
        raise ValueError("seed must be non-empty")
    while True:
        if len(members) < 3:
            return _make_island(cps, members)
        idx = sorted(members)
        poly = [cps.points[idx[i]] for i in convex_hull([cps.points[i] for i in idx])]
        grown = {i for i, p in enumerate(cps.points) if i in members or in_convex_polygon(p, poly, strict=False)}
        if grown == members:
            return _make_island(cps, members)
        members = grown


def is_island(cps: ColoredPointSet, members: Sequence[int]) -> bool:
    return set(island_close(cps, members).members) == set(members)


def unbalanced_island(cps: ColoredPointSet, threshold: int = 5, seed: int = 0, subsample: int | None = 60) -> Island:
    """An island whose color counts differ by at least ``threshold``.

    Find a convex (2*threshold - 1)-gon, close it to an island, and if it is
    not yet unbalanced drop hull vertices: threshold - i of the minority color
    when available, otherwise threshold + i of the majority color.
    """
    k = 2 * threshold - 1
    gon = find_convex_kgon(cps.points, k, subsample=subsample, seed=seed)
    if gon is None:
        raise No9Gon(f"no convex {k}-gon among {cps.n} points")
    island = island_close(cps, gon)
    if island.unbalanced(threshold):
        return island
    if island.r >= island.b:
        major, minor = Color.RED, Color.BLUE
        i = island.r - island.b
    else:
        major, minor = Color.BLUE, Color.RED
        i = island.b - island.r
    hull_minor = [v for v in island.hull if cps.colors[v] is minor]
    hull_major = [v for v in island.hull if cps.colors[v] is major]
    if len(hull_minor) >= threshold - i:
        drop = hull_minor[: threshold - i]
    else:
        drop = hull_major[: threshold + i]
    result = _make_island(cps, set(island.members) - set(drop))
    assert result.unbalanced(threshold)
    return result


# -- disjoint 4-holes --------------------------------------------------------------

def _incircle(a, b, c, d) -> int:
    """> 0 iff d lies strictly inside the circle through ccw a, b, c."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    det = ((adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
           - (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady)
           + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady))
    return (det > 0) - (det < 0)


def triangulate(ps: Sequence[Point], order: Sequence[int] | None = None, delaunay: bool = True) -> list[tuple[int, int, int]]:
    """Exact triangulation (ccw triangles); sweep insertion then Lawson flips."""
    n = len(ps)
    if n < 3:
        return []
    idx = list(order) if order is not None else sorted(range(n), key=lambda i: (ps[i][0], ps[i][1]))
    if order is not None:
        idx = sorted(idx, key=lambda i: (ps[i][0], ps[i][1]))
    a, b, c = idx[:3]
    if orient(ps[a], ps[b], ps[c]) < 0:
        b, c = c, b
    tris: dict[int, tuple[int, int, int]] = {0: (a, b, c)}
    edge: dict[tuple[int, int], int] = {(a, b): 0, (b, c): 0, (c, a): 0}
    hull = [a, b, c]
    nxt = 1
    for p in idx[3:]:
        P = ps[p]
        h = len(hull)
        vis = [orient(ps[hull[i]], ps[hull[(i + 1) % h]], P) < 0 for i in range(h)]
        # visible edges form one contiguous arc
        start = next(i for i in range(h) if vis[i] and not vis[i - 1])
        k = start
        new_hull_from = hull[start]
        while vis[k % h]:
            u, v = hull[k % h], hull[(k + 1) % h]
            t = (v, u, p)
            tris[nxt] = t
            for e in ((v, u), (u, p), (p, v)):
                edge[e] = nxt
            nxt += 1
            k += 1
        end = k % h
        new_hull = []
        i = end
        while True:
            new_hull.append(hull[i])
            if hull[i] == new_hull_from:
                break
            i = (i + 1) % h
        hull = new_hull + [p]
    if delaunay:
        _lawson(ps, tris, edge)
    return list(tris.values())


def _lawson(ps, tris, edge):
    stack = list(edge.keys())
    while stack:
        u, v = stack.pop()
        t1 = edge.get((u, v))
        t2 = edge.get((v, u))
        if t1 is None or t2 is None:
            continue
        a = [x for x in tris[t1] if x != u and x != v][0]
        b = [x for x in tris[t2] if x != u and x != v][0]
        # t1 = (u, v, a) ccw, t2 = (v, u, b) ccw
        if _incircle(ps[u], ps[v], ps[a], ps[b]) <= 0:
            continue
        if orient(ps[a], ps[b], ps[u]) * orient(ps[a], ps[b], ps[v]) >= 0:
            continue
        for e in ((u, v), (v, a), (a, u), (v, u), (u, b), (b, v)):
            edge.pop(e, None)
        n1, n2 = (a, b, v), (b, a, u)
        if orient(ps[a], ps[b], ps[v]) < 0:
            n1, n2 = (b, a, v), (a, b, u)
        tris[t1], tris[t2] = n1, n2
        for t, tri in ((t1, n1), (t2, n2)):
            for i in range(3):
                edge[(tri[i], tri[(i + 1) % 3])] = t
        stack.extend([(v, a), (a, u), (u, b), (b, v), (a, v), (u, a), (b, u), (v, b)])


@dataclass(frozen=True)
class HoleFamily:
    holes: tuple[tuple[int, int, int, int], ...]  # each ccw

    def __len__(self) -> int:
        return len(self.holes)


def _quad_from_pair(t1, t2):
    shared = set(t1) & set(t2)
    if len(shared) != 2:
        return None
    a = [x for x in t1 if x not in shared][0]
    b = [x for x in t2 if x not in shared][0]
    i = t1.index(a)
    u, v = t1[(i + 1) % 3], t1[(i + 2) % 3]
    return (a, u, b, v)  # ccw because t1 = (a, u, v) ccw and b lies beyond uv


def _matching_holes(ps, tris) -> list[tuple[int, int, int, int]]:
    g = nx.Graph()
    g.add_nodes_from(range(len(tris)))
    owner: dict[frozenset, int] = {}
    quads = {}
    for t, tri in enumerate(tris):
        for i in range(3):
            e = frozenset((tri[i], tri[(i + 1) % 3]))
            if e in owner:
                s = owner[e]
                q = _quad_from_pair(tris[s], tri)
                if q and all(orient(ps[q[i]], ps[q[(i + 1) % 4]], ps[q[(i + 2) % 4]]) > 0 for i in range(4)):
                    g.add_edge(s, t)
                    quads[frozenset((s, t))] = q
            else:
                owner[e] = t
    matching = nx.max_weight_matching(g, maxcardinality=True)
    return [quads[frozenset(e)] for e in matching]


def _all_4holes(ps):
    n = len(ps)
    out = []
    for sub in itertools.combinations(range(n), 4):
        pts = [ps[i] for i in sub]
        hull = convex_hull(pts)
        if len(hull) != 4:
            continue
        poly = [pts[i] for i in hull]
        if not any(in_convex_polygon(ps[j], poly) for j in range(n) if j not in sub):
            out.append(tuple(sub[i] for i in hull))
    return out


def _augment_exhaustive(ps, need: int, limit: int = 200_000) -> list[tuple[int, int, int, int]]:
    """Largest interior-disjoint family of 4-holes by bounded backtracking."""
    holes = _all_4holes(ps)
    conflict = [0] * len(holes)
    for i, j in itertools.combinations(range(len(holes)), 2):
        if interiors_intersect([ps[v] for v in holes[i]], [ps[v] for v in holes[j]]):
            conflict[i] |= 1 << j
            conflict[j] |= 1 << i
    best: list[int] = []
    steps = [0]

    def grow(chosen, cand):
        nonlocal best
        steps[0] += 1
        if len(chosen) > len(best):
            best = list(chosen)
        if len(best) >= need or steps[0] > limit:
            return
        if len(chosen) + bin(cand).count("1") <= len(best):
            return
        while cand:
            low = cand & -cand
            i = low.bit_length() - 1
            cand ^= low
            chosen.append(i)
            grow(chosen, cand & ~conflict[i])
            chosen.pop()
            if len(best) >= need or steps[0] > limit:
                return

    grow([], (1 << len(holes)) - 1)
    return [holes[i] for i in best]


def disjoint_4holes(ps: Sequence[Point], seed: int = 0) -> HoleFamily:
    """At least floor((m - 3) / 2) interior-disjoint convex 4-holes.

    Adjacent triangles of a triangulation whose union is convex form an empty
    convex quadrilateral, and triangles of one triangulation have disjoint
    interiors; a maximum matching over such pairs gives the family. If a
    triangulation falls short, re-triangulate from random insertion orders
    without flips, then fall back to exhaustive search over all 4-holes.
    """
    m = len(ps)
    if m < 4:
        raise TooFewPoints("need at least 4 points")
    need = (m - 3) // 2
    ps = [Point(int(x), int(y)) for x, y in ps]
    best = _matching_holes(ps, triangulate(ps))
    rng = random.Random(seed)
    tries = 0
    while len(best) < max(need, 1) and tries < 10:
        cand = _matching_holes(ps, _random_triangulation(ps, rng))
        if len(cand) > len(best):
            best = cand
        tries += 1
    if len(best) < max(need, 1) and m <= 40:
        cand = _augment_exhaustive(ps, max(need, 1))
        if len(cand) > len(best):
            best = cand
    return HoleFamily(tuple(best))


def _random_triangulation(ps, rng):
    tris = triangulate(ps, delaunay=False)
    tri_map = dict(enumerate(tris))
    edge = {}
    for t, tri in tri_map.items():
        for i in range(3):
            edge[(tri[i], tri[(i + 1) % 3])] = t
    keys = list(edge.keys())
    for _ in range(4 * len(keys)):
        u, v = rng.choice(keys)
        t1, t2 = edge.get((u, v)), edge.get((v, u))
        if t1 is None or t2 is None:
            continue
        a = [x for x in tri_map[t1] if x not in (u, v)][0]
        b = [x for x in tri_map[t2] if x not in (u, v)][0]
        if orient(ps[a], ps[b], ps[u]) * orient(ps[a], ps[b], ps[v]) >= 0:
            continue
        for e in ((u, v), (v, a), (a, u), (v, u), (u, b), (b, v)):
            edge.pop(e, None)
        n1, n2 = (a, b, v), (b, a, u)
        if orient(ps[a], ps[b], ps[v]) < 0:
            n1, n2 = (b, a, v), (a, b, u)
        tri_map[t1], tri_map[t2] = n1, n2
        for t, tri in ((t1, n1), (t2, n2)):
            for i in range(3):
                edge[(tri[i], tri[(i + 1) % 3])] = t
        keys = list(edge.keys())
    return list(tri_map.values())


def interiors_intersect(A: Sequence, B: Sequence) -> bool:
    """Exact test for two ccw convex polygons: do their open interiors meet?

    Separating-axis argument: interiors are disjoint iff some edge line of one
    polygon has the whole other polygon on its closed outer side.
    """
    for P, Q in ((A, B), (B, A)):
        k = len(P)
        for i in range(k):
            a, b = P[i], P[(i + 1) % k]
            if all(orient(a, b, q) <= 0 for q in Q):
                return False
    return True


def verify_hole_family(ps: Sequence[Point], fam: HoleFamily) -> bool:
    for h in fam.holes:
        poly = [ps[i] for i in h]
        if len(set(h)) != 4 or not all(orient(poly[i], poly[(i + 1) % 4], poly[(i + 2) % 4]) > 0 for i in range(4)):
            return False
        if any(in_convex_polygon(p, poly) for j, p in enumerate(ps) if j not in h):
            return False
    for h1, h2 in itertools.combinations(fam.holes, 2):
        if interiors_intersect([ps[i] for i in h1], [ps[i] for i in h2]):
            return False
    return True


# -- Erdos-Szekeres bound and the necklace pipeline ---------------------------------

def es_upper_bound(k: int) -> int:
    """C(2k-5, k-2) - C(2k-8, k-3) + 2, valid for k >= 6."""
    if k < 6:
        raise OutOfRange("the bound is stated for k >= 6")
    return math.comb(2 * k - 5, k - 2) - math.comb(2 * k - 8, k - 3) + 2


def necklace_avoiding(cps_points: Sequence[Point], quad: Sequence[int], avoid: int | None) -> StructureInstance:
    """A necklace on a convex quadruple whose region misses the point ``avoid``."""
    convex, h = canonical_order(cps_points, quad)
    if not convex:
        raise ValueError("necklace needs a convex quadruple")
    if avoid is None:
        return StructureInstance(h, StructureKind.NECKLACE, 0)
    p = cps_points[avoid]
    P = [cps_points[i] for i in h]
    for j in range(4):
        a, b, c, d = P[j], P[(j + 1) % 4], P[(j + 2) % 4], P[(j + 3) % 4]
        if orient(a, b, p) > 0 and orient(a, c, p) < 0 and orient(b, d, p) > 0:
            # necklace k leaves out the diagonal cell on edge (h_k+2, h_k+3)
            return StructureInstance(h, StructureKind.NECKLACE, (j - 2) % 4)
    raise ValueError("point is not strictly inside the quadrilateral")


def blue_necklace_certificate(cps: ColoredPointSet, seed: int = 0, subsample: int | None = 60) -> StructureInstance | None:
    """Empty monochromatic necklace found the way the 1508-point argument goes.

    Unbalanced island -> interior-disjoint 4-holes of its majority color ->
    a hole holding at most one minority point -> the necklace that avoids it.
    Returns None if a stage fails.
    """
    try:
        island = unbalanced_island(cps, seed=seed, subsample=subsample)
    except No9Gon:
        return None
    reds = [i for i in island.members if cps.colors[i] is Color.RED]
    blues = [i for i in island.members if cps.colors[i] is Color.BLUE]
    major, minor = (blues, reds) if len(blues) > len(reds) else (reds, blues)
    if len(major) < 4:
        return None
    fam = disjoint_4holes([cps.points[i] for i in major], seed)
    for hole in fam.holes:
        quad = [major[i] for i in hole]
        poly = [cps.points[i] for i in quad]
        inside = [j for j in minor if in_convex_polygon(cps.points[j], poly)]
        if len(inside) > 1:
            continue
        inst = necklace_avoiding(cps.points, quad, inside[0] if inside else None)
        if structure_status(inst, cps).empty:
            return inst
    return None
