"""Exact integer geometry: orientation, hulls, triangle membership, order types.

Every predicate here is decided by the sign of an integer (or rational)
determinant. Nothing in this module touches floating point.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

COORD_LIMIT = 2**30


class GeometryError(ValueError):
    """Base class for rejected geometric input."""


class CollinearInput(GeometryError):
    pass


class DuplicatePoints(GeometryError):
    pass


class CoordinateOutOfRange(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class Point(NamedTuple):
    x: int
    y: int


class Color(enum.IntEnum):
    RED = 0
    BLUE = 1

    @property
    def other(self) -> "Color":
        return Color.BLUE if self is Color.RED else Color.RED

    @classmethod
    def parse(cls, text: str) -> "Color":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown color {text!r}") from None


class Mode(enum.Enum):
    CLOSED = "closed"
    OPEN = "open"


def orient(p, q, r) -> int:
    """Sign of (q - p) x (r - p); +1 means p, q, r turn counterclockwise.

    Works for ints and Fractions alike, so probe points may be rational.
    """
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def check_coordinates(points: Sequence[Point], limit: int = COORD_LIMIT) -> None:
    for i, (x, y) in enumerate(points):
        if not (isinstance(x, (int, np.integer)) and isinstance(y, (int, np.integer))):
            raise TypeError(f"point {i} has non-integer coordinates ({x!r}, {y!r})")
        if abs(x) > limit or abs(y) > limit:
            raise CoordinateOutOfRange(f"point {i} = ({x}, {y}) exceeds |coord| <= 2^30")


def _collinear_triple_full(points: Sequence[Point]) -> tuple[int, int, int] | None:
    """Exact scan. Direction hashing around each point, O(n^2) vectorised."""
    n = len(points)
    if n < 3:
        return None
    if n <= 64:
        for i, j, k in itertools.combinations(range(n), 3):
            if orient(points[i], points[j], points[k]) == 0:
                return i, j, k
        return None
    xs = np.array([p[0] for p in points], dtype=np.int64)
    ys = np.array([p[1] for p in points], dtype=np.int64)
    for i in range(n):
        dx = np.delete(xs - xs[i], i)
        dy = np.delete(ys - ys[i], i)
        g = np.gcd(dx, dy)
        dx //= g
        dy //= g
        flip = (dx < 0) | ((dx == 0) & (dy < 0))
        dx[flip] *= -1
        dy[flip] *= -1
        order = np.lexsort((dy, dx))
        sx, sy = dx[order], dy[order]
        dup = np.nonzero((sx[1:] == sx[:-1]) & (sy[1:] == sy[:-1]))[0]
        if dup.size:
            others = [int(o) + (int(o) >= i) for o in order[dup[0]:dup[0] + 2]]
            return tuple(sorted((i, *others)))
    return None


def _collinear_triple_sampled(points: Sequence[Point], samples: int, seed: int = 0):
    rng = random.Random(seed)
    n = len(points)
    for _ in range(samples):
        i, j, k = rng.sample(range(n), 3)
        if orient(points[i], points[j], points[k]) == 0:
            return tuple(sorted((i, j, k)))
    return None


def find_collinear_triple(points: Sequence[Point], check: str = "auto"):
    """Return indices of some collinear triple, or None.

    ``check`` is "full" (exact), "sampled" (random triples) or "auto", which is
    exact up to 64 points and sampled beyond.
    """
    if check == "none":
        return None
    if check == "full" or (check == "auto" and len(points) <= 64):
        return _collinear_triple_full(points)
    return _collinear_triple_sampled(points, samples=200_000)


def validate_general_position(points: Sequence[Point], check: str = "auto") -> None:
    check_coordinates(points)
    if len(set(map(tuple, points))) != len(points):
        raise DuplicatePoints("point set contains repeated points")
    triple = find_collinear_triple(points, check)
    if triple is not None:
        raise CollinearInput(f"points {triple} are collinear")


@dataclass(frozen=True)
class ColoredPointSet:
    """Points in general position with a red/blue coloring."""

    points: tuple[Point, ...]
    colors: tuple[Color, ...]

    def __init__(self, points, colors, check: str = "auto"):
        pts = tuple(Point(int(x), int(y)) for x, y in points)
        cols = tuple(c if isinstance(c, Color) else Color(int(c)) for c in colors)
        if len(pts) != len(cols):
            raise ValueError(f"{len(pts)} points but {len(cols)} colors")
        validate_general_position(pts, check)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "colors", cols)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def r(self) -> int:
        return sum(1 for c in self.colors if c is Color.RED)

    @property
    def b(self) -> int:
        return len(self.colors) - self.r

    def indices(self, color: Color) -> list[int]:
        return [i for i, c in enumerate(self.colors) if c is color]

    def red_mask(self) -> int:
        return sum(1 << i for i, c in enumerate(self.colors) if c is Color.RED)

    def swapped(self) -> "ColoredPointSet":
        return ColoredPointSet(self.points, [c.other for c in self.colors], check="none")

    def subset(self, idx: Sequence[int]) -> "ColoredPointSet":
        return ColoredPointSet([self.points[i] for i in idx], [self.colors[i] for i in idx], check="none")


def convex_hull(points: Sequence[Point]) -> list[int]:
    """Hull vertex indices, counterclockwise, starting at the lexicographic minimum.

    Raises CollinearInput when three hull-relevant points are collinear.
    """
    n = len(points)
    if n == 0:
        return []
    order = sorted(range(n), key=lambda i: (points[i][0], points[i][1]))
    for a, b in zip(order, order[1:]):
        if points[a] == points[b]:
            raise DuplicatePoints(f"points {a} and {b} coincide")
    if n < 3:
        return order

    def chain(seq):
        out: list[int] = []
        for i in seq:
            while len(out) >= 2:
                o = orient(points[out[-2]], points[out[-1]], points[i])
                if o == 0:
                    raise CollinearInput(f"points {out[-2]}, {out[-1]}, {i} are collinear")
                if o < 0:
                    out.pop()
                else:
                    break
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise CollinearInput("all points are collinear")
    return hull


def hull_size(points: Sequence[Point]) -> int:
    return len(convex_hull(points))


def in_triangle(p, a, b, c, mode: Mode = Mode.CLOSED) -> bool:
    o = orient(a, b, c)
    if o == 0:
        raise DegenerateTriangle(f"triangle {a}, {b}, {c} is degenerate")
    s1, s2, s3 = orient(a, b, p) * o, orient(b, c, p) * o, orient(c, a, p) * o
    if mode is Mode.OPEN:
        return s1 > 0 and s2 > 0 and s3 > 0
    return s1 >= 0 and s2 >= 0 and s3 >= 0


def in_convex_polygon(p, poly: Sequence, strict: bool = True) -> bool:
    """Membership in a ccw convex polygon given as a vertex list."""
    k = len(poly)
    for i in range(k):
        o = orient(poly[i], poly[(i + 1) % k], p)
        if o < 0 or (strict and o == 0):
            return False
    return True


def layers(points: Sequence[Point]) -> list[list[int]]:
    """Convex layers (onion peeling) as lists of indices into ``points``."""
    remaining = list(range(len(points)))
    out = []
    while remaining:
        if len(remaining) < 3:
            out.append(remaining)
            break
        hull = [remaining[i] for i in convex_hull([points[i] for i in remaining])]
        out.append(hull)
        hs = set(hull)
        remaining = [i for i in remaining if i not in hs]
    return out


# -- order types -----------------------------------------------------------

@dataclass(frozen=True)
class Chirotope:
    """Order-type fingerprint. ``canonical`` is False above the exact threshold."""

    n: int
    data: bytes
    canonical: bool = True

    def hex(self) -> str:
        return self.data.hex()


CANONICAL_LIMIT = 12


def _sign_string(points: Sequence[Point], labels: Sequence[int]) -> bytes:
    out = bytearray()
    n = len(labels)
    for i in range(n):
        pi = points[labels[i]]
        for j in range(i + 1, n):
            pj = points[labels[j]]
            for k in range(j + 1, n):
                out.append(49 if orient(pi, pj, points[labels[k]]) > 0 else 48)
    return bytes(out)


def _angular_labelings(points: Sequence[Point]):
    from functools import cmp_to_key

    for h in convex_hull(points):
        others = [i for i in range(len(points)) if i != h]
        ph = points[h]
        others.sort(key=cmp_to_key(lambda a, b: -orient(ph, points[a], points[b])))
        yield [h] + others


def chirotope_fingerprint(points: Sequence[Point]) -> Chirotope:
    """Fingerprint equal for two sets iff they share an order type up to relabeling
    and reflection (exact for n <= 12).

    Each hull vertex, read with the other points in angular order around it,
    gives a labeling determined by the order type alone; the fingerprint is
    the smallest sign string over those labelings of the set and its mirror.
    """
    n = len(points)
    pts = [Point(int(x), int(y)) for x, y in points]
    validate_general_position(pts, "full" if n <= 200 else "auto")
    if n <= 2:
        return Chirotope(n, b"")
    if n > CANONICAL_LIMIT:
        return Chirotope(n, _invariant_hash(pts), canonical=False)
    mirror = [Point(-x, y) for x, y in pts]
    best = None
    for ps in (pts, mirror):
        for lab in _angular_labelings(ps):
            s = _sign_string(ps, lab)
            if best is None or s < best:
                best = s
    return Chirotope(n, best)


def _invariant_hash(points: Sequence[Point]) -> bytes:
    """Relabeling/reflection invariant digest (collisions possible)."""
    import hashlib

    n = len(points)
    hull = set(convex_hull(points))
    per_point = []
    for i in range(n):
        # number of points left of each directed line through i: a multiset invariant up to reflection
        lefts = sorted(
            min(c, n - 2 - c)
            for j in range(n)
            if j != i
            for c in [sum(1 for k in range(n) if k not in (i, j) and orient(points[i], points[j], points[k]) > 0)]
        )
        per_point.append((i in hull, tuple(lefts)))
    per_point.sort()
    return hashlib.sha256(repr((n, per_point, [len(l) for l in layers(points)])).encode()).digest()


def brute_force_fingerprint(points: Sequence[Point]) -> bytes:
    """Minimum sign string over all n! labelings and both mirror images (test oracle)."""
    pts = [Point(int(x), int(y)) for x, y in points]
    mirror = [Point(-x, y) for x, y in pts]
    n = len(pts)
    return min(_sign_string(ps, perm) for ps in (pts, mirror) for perm in itertools.permutations(range(n)))


def random_point_set(n: int, rng: random.Random, size: int = 2**16, check: str = "full") -> list[Point]:
    """n random integer points in [0, size)^2 in general position."""
    while True:
        pts = [Point(rng.randrange(size), rng.randrange(size)) for _ in range(n)]
        try:
            validate_general_position(pts, check)
        except GeometryError:
            continue
        return pts
