"""Exact minimum number of blockers for the red structures of a kind set.

Blue positions are discretised to the open cells of the arrangement of all
lines through two red points: every structure region is bounded by such
lines, so a cell lies entirely inside or entirely outside each region. The
problem then becomes a minimum hitting set (targets = clean red structures,
choices = cells), solved exactly by branch and bound.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .geom import Point, convex_hull, validate_general_position
from .structures import (
    StructureInstance,
    StructureKind,
    geometrically_empty,
    kind_mask,
    kinds_label,
)


class TooFewPoints(ValueError):
    pass


class KindsNotCovered(ValueError):
    pass


class SourceUnavailable(RuntimeError):
    pass


# -- arrangement cells -------------------------------------------------------

@dataclass(frozen=True)
class Cell:
    """An open 2-D cell: an exact interior point and its sign vector.

    ``signs[t]`` is orient(P_i, P_j, rep) for the t-th pair i < j in
    lexicographic order.
    """

    rep: tuple[Fraction, Fraction]
    signs: tuple[int, ...]


def _line_pairs(r: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(r), 2))


def _ray_half(d) -> int:
    return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1


def _ray_cmp(u, v) -> int:
    hu, hv = _ray_half(u), _ray_half(v)
    if hu != hv:
        return hu - hv
    c = u[0] * v[1] - u[1] * v[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def candidate_cells(red: Sequence[Point], within_hull: bool = True) -> list[Cell]:
    """One exact representative for every open cell inside the red hull.

    With ``within_hull=False`` every cell of the arrangement is returned,
    unbounded ones included (each still has a vertex once two lines cross).

    Each bounded cell has a vertex, where it occupies one angular wedge between
    consecutive lines through that vertex; walking all wedges of all vertices
    therefore meets every cell. Representatives are deduplicated by sign
    vector.
    """
    r = len(red)
    if r < 3:
        raise TooFewPoints("need at least 3 red points")
    pts = [Point(int(x), int(y)) for x, y in red]
    validate_general_position(pts, "full")
    pairs = _line_pairs(r)
    # f(x, y) = A x + B y + C = cross(P_j - P_i, (x, y) - P_i)
    lines = []
    for i, j in pairs:
        dx, dy = pts[j].x - pts[i].x, pts[j].y - pts[i].y
        lines.append((-dy, dx, dy * pts[i].x - dx * pts[i].y, (dx, dy)))

    vertices: dict[tuple[int, int, int], set[int]] = {}
    for t, (i, j) in enumerate(pairs):
        for v in (i, j):
            vertices.setdefault((pts[v].x, pts[v].y, 1), set()).add(t)
    for s, t in itertools.combinations(range(len(pairs)), 2):
        if set(pairs[s]) & set(pairs[t]):
            continue
        A1, B1, C1, _ = lines[s]
        A2, B2, C2, _ = lines[t]
        W = A1 * B2 - A2 * B1
        if W == 0:
            continue
        X = B1 * C2 - B2 * C1
        Y = C1 * A2 - C2 * A1
        if W < 0:
            X, Y, W = -X, -Y, -W
        g = math.gcd(math.gcd(X, Y), W)
        vertices.setdefault((X // g, Y // g, W // g), set()).update((s, t))

    hull = convex_hull(pts)
    hull_edges = []
    for k in range(len(hull)):
        a, b = hull[k], hull[(k + 1) % len(hull)]
        hull_edges.append((pairs.index((min(a, b), max(a, b))), 1 if a < b else -1))

    seen: dict[tuple[int, ...], Cell] = {}
    for (X, Y, W), through in sorted(vertices.items()):
        base = []
        for A, B, C, _ in lines:
            f = A * X + B * Y + C * W
            base.append((f > 0) - (f < 0))
        rays = []
        for t in through:
            d = lines[t][3]
            rays.append(d)
            rays.append((-d[0], -d[1]))
        rays.sort(key=cmp_to_key(_ray_cmp))
        for k in range(len(rays)):
            u, w = rays[k], rays[(k + 1) % len(rays)]
            wd = (u[0] + w[0], u[1] + w[1])
            signs = list(base)
            for t in through:
                d = lines[t][3]
                c = d[0] * wd[1] - d[1] * wd[0]
                signs[t] = (c > 0) - (c < 0)
            if within_hull and any(signs[e] * o <= 0 for e, o in hull_edges):
                continue
            key = tuple(signs)
            if key in seen:
                continue
            seen[key] = Cell(_wedge_point(lines, through, (X, Y, W), wd), key)
    return list(seen.values())


def _wedge_point(lines, through, vertex, wd) -> tuple[Fraction, Fraction]:
    X, Y, W = vertex
    vx, vy = Fraction(X, W), Fraction(Y, W)
    eps = Fraction(1)
    for t, (A, B, C, d) in enumerate(lines):
        if t in through:
            continue
        f = A * vx + B * vy + C
        g = d[0] * wd[1] - d[1] * wd[0]
        if g != 0 and (f > 0) != (g > 0):
            eps = min(eps, abs(f) / abs(g) / 2)
    return (vx + eps * wd[0], vy + eps * wd[1])


def sign_tensor(cells: Sequence[Cell], r: int) -> np.ndarray:
    """Expand sign vectors to an (C, r, r) antisymmetric int8 tensor."""
    S = np.zeros((len(cells), r, r), dtype=np.int8)
    pairs = _line_pairs(r)
    if not cells:
        return S
    sv = np.array([c.signs for c in cells], dtype=np.int8)
    for t, (i, j) in enumerate(pairs):
        S[:, i, j] = sv[:, t]
        S[:, j, i] = -sv[:, t]
    return S


# -- hitting set -------------------------------------------------------------

def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def greedy_hitting_set(cover: Sequence[int], universe: int) -> list[int]:
    chosen, left = [], universe
    while left:
        c = max(range(len(cover)), key=lambda i: (bin(cover[i] & left).count("1"), -i))
        if not cover[c] & left:
            raise ValueError("universe cannot be covered")
        chosen.append(c)
        left &= ~cover[c]
    return chosen


def exhaustive_hitting_set(cover: Sequence[int], universe: int) -> list[int]:
    """Smallest covering subfamily by plain enumeration (test oracle)."""
    if not universe:
        return []
    for size in range(1, len(cover) + 1):
        for combo in itertools.combinations(range(len(cover)), size):
            acc = 0
            for c in combo:
                acc |= cover[c]
            if acc & universe == universe:
                return list(combo)
    raise ValueError("universe cannot be covered")


def _reduce(cover: list[int], universe: int):
    """Drop dominated choices and implied targets. Returns (choice ids, targets mask)."""
    alive = sorted(range(len(cover)), key=lambda c: -bin(cover[c] & universe).count("1"))
    kept: list[int] = []
    seen = set()
    for c in alive:
        m = cover[c] & universe
        if not m or m in seen:
            continue
        if any(m | cover[k] & universe == cover[k] & universe for k in kept):
            continue
        kept.append(c)
        seen.add(m)
    # target t is implied by t' when every choice hitting t' also hits t
    hit_by = {}
    for t in _bits(universe):
        hit_by[t] = sum(1 << idx for idx, c in enumerate(kept) if cover[c] >> t & 1)
    targets = sorted(hit_by, key=lambda t: bin(hit_by[t]).count("1"))
    core = 0
    chosen_masks: list[int] = []
    for t in targets:
        m = hit_by[t]
        if any(cm | m == m for cm in chosen_masks):
            continue
        chosen_masks.append(m)
        core |= 1 << t
    return kept, core


def min_hitting_set(cover: Sequence[int], universe: int) -> list[int]:
    """Exact minimum number of choices covering ``universe``.

    ``cover[c]`` is the bitmask of targets hit by choice c. Branch and bound on
    the target with the fewest remaining choices; greedy incumbent; the bound
    is a greedy packing of targets that no single choice hits together.
    """
    if not universe:
        return []
    cover = list(cover)
    kept, core = _reduce(cover, universe)
    cm = [cover[c] & core for c in kept]
    targets = list(_bits(core))
    hit_by = {t: sum(1 << i for i, m in enumerate(cm) if m >> t & 1) for t in targets}
    if any(hit_by[t] == 0 for t in targets):
        raise ValueError("universe cannot be covered")
    best = greedy_hitting_set(cm, core)
    best_len = [len(best)]
    best_sol = [list(best)]

    def lower_bound(left: int, allowed: int) -> int:
        used = 0
        lb = 0
        for t in sorted(_bits(left), key=lambda t: bin(hit_by[t] & allowed).count("1")):
            h = hit_by[t] & allowed
            if not h & used:
                used |= h
                lb += 1
        return lb

    def branch(left: int, allowed: int, chosen: list[int]):
        if not left:
            if len(chosen) < best_len[0]:
                best_len[0] = len(chosen)
                best_sol[0] = list(chosen)
            return
        if len(chosen) + 1 >= best_len[0]:
            return
        if len(chosen) + lower_bound(left, allowed) >= best_len[0]:
            return
        t = min(_bits(left), key=lambda t: bin(hit_by[t] & allowed).count("1"))
        options = sorted(_bits(hit_by[t] & allowed), key=lambda c: -bin(cm[c] & left).count("1"))
        for c in options:
            chosen.append(c)
            branch(left & ~cm[c], allowed, chosen)
            chosen.pop()
            allowed &= ~(1 << c)
            if len(chosen) + 1 >= best_len[0]:
                return

    branch(core, (1 << len(cm)) - 1, [])
    sol = [kept[i] for i in best_sol[0]]
    acc = 0
    for c in sol:
        acc |= cover[c]
    assert acc & universe == universe
    return sol


# -- blocking ----------------------------------------------------------------

@dataclass
class BlockingProblem:
    red: list[Point]
    kinds: frozenset[StructureKind]
    targets: list[StructureInstance]
    cells: list[Cell]
    hits: np.ndarray  # (cells, targets) membership

    def cover_masks(self) -> list[int]:
        out = []
        for row in self.hits:
            m = 0
            for t in np.flatnonzero(row):
                m |= 1 << int(t)
            out.append(m)
        return out

    @property
    def universe(self) -> int:
        return (1 << len(self.targets)) - 1


@dataclass
class BlockingResult:
    count: int
    placement: list[tuple[Fraction, Fraction]]
    cells: list[int] = field(default_factory=list)
    n_targets: int = 0
    n_cells: int = 0


def blocking_problem(red: Sequence[Point], kinds: Iterable[StructureKind]) -> BlockingProblem:
    red = [Point(int(x), int(y)) for x, y in red]
    kinds = frozenset(kinds)
    targets = geometrically_empty(red, kinds) if len(red) >= 4 else []
    if not targets:
        return BlockingProblem(red, kinds, [], [], np.zeros((0, 0), dtype=np.uint8))
    cells = candidate_cells(red)
    rows = np.array([t.to_row() for t in targets], dtype=np.int32)
    hits = kernels.cell_hits(sign_tensor(cells, len(red)), rows)
    return BlockingProblem(red, kinds, targets, cells, hits)


def milp_hitting_set(hits: np.ndarray) -> list[int]:
    """Exact minimum via the HiGHS MILP solver; ``hits`` is (choices, targets)."""
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import csr_matrix

    C = hits.shape[0]
    res = milp(
        c=np.ones(C),
        constraints=LinearConstraint(csr_matrix(hits.T.astype(np.float64)), lb=1, ub=np.inf),
        integrality=np.ones(C),
        bounds=Bounds(0, 1),
    )
    if res.status != 0:
        raise RuntimeError(f"MILP solver failed: {res.message}")
    sol = [int(c) for c in np.flatnonzero(res.x > 0.5)]
    covered = hits[sol].any(axis=0)
    if not covered.all():
        raise RuntimeError("MILP solution does not cover every target")
    return sol


BNB_MAX_RED = 7


def min_blockers(red: Sequence[Point], kinds: Iterable[StructureKind], solver: str = "auto") -> BlockingResult:
    """Fewest blue points that put one blue point in every clean red structure.

    ``solver``: "bnb" (own branch and bound), "milp" (HiGHS), "greedy"
    (upper bound only) or "auto" (bnb up to 7 red points, milp beyond).
    """
    prob = blocking_problem(red, kinds)
    if not prob.targets:
        return BlockingResult(0, [], [], 0, 0)
    if solver == "auto":
        solver = "bnb" if len(prob.red) <= BNB_MAX_RED else "milp"
    if solver == "milp":
        sol = milp_hitting_set(prob.hits)
    elif solver == "bnb":
        sol = min_hitting_set(prob.cover_masks(), prob.universe)
    elif solver == "greedy":
        sol = greedy_hitting_set(prob.cover_masks(), prob.universe)
    else:
        raise ValueError(f"unknown solver {solver!r}")
    return BlockingResult(len(sol), [prob.cells[c].rep for c in sol], sol, len(prob.targets), len(prob.cells))


# -- claims ------------------------------------------------------------------

class ClaimStatus(enum.Enum):
    UNCHECKED = "unchecked"
    VERIFIED = "verified"
    REFUTED = "refuted"


@dataclass
class BlockersClaim:
    """``r`` red points require ``b`` blue points to block all red ``kinds``."""

    r: int
    b: int
    kinds: frozenset[StructureKind]
    status: ClaimStatus = ClaimStatus.UNCHECKED
    source: str = ""
    checked: int = 0
    witness: list[Point] | None = None
    witness_placement: list | None = None
    min_seen: int | None = None

    def label(self) -> str:
        return f"<{self.r},{self.b}> for {{{kinds_label(self.kinds)}}}"


def verify_pair_claim(claim: BlockersClaim, configurations: Iterable[Sequence[Point]], source: str = "",
                      solver: str = "auto") -> BlockersClaim:
    """Check ``min_blockers >= b`` on every configuration; refute with a witness otherwise."""
    checked = 0
    lowest = None
    for red in configurations:
        if len(red) != claim.r:
            raise SourceUnavailable(f"configuration of size {len(red)} for a claim about {claim.r} points")
        res = min_blockers(red, claim.kinds, solver)
        checked += 1
        lowest = res.count if lowest is None else min(lowest, res.count)
        if res.count < claim.b:
            return BlockersClaim(claim.r, claim.b, claim.kinds, ClaimStatus.REFUTED, source, checked,
                                 list(red), res.placement, lowest)
    if checked == 0:
        raise SourceUnavailable("source produced no configurations")
    return BlockersClaim(claim.r, claim.b, claim.kinds, ClaimStatus.VERIFIED, source, checked, None, None, lowest)


INDUCTION_SETTINGS = (
    frozenset({StructureKind.PANT, StructureKind.BOWTIE}),
    frozenset({StructureKind.PANT, StructureKind.NECKLACE}),
)


def induction_closure(base: Iterable[tuple[int, int]], kinds: Iterable[StructureKind], up_to: int) -> list[tuple[int, int, str]]:
    """Extend verified pairs with <r,b> & <r-1,b-1> => <r+1,b+1>.

    Returns (r, b, label) rows sorted by r; label is "base" or "derived-by-lemma".
    """
    kinds = frozenset(kinds)
    if kinds not in INDUCTION_SETTINGS:
        raise KindsNotCovered(f"induction only covers pant+bowtie and pant+necklace, not {kinds_label(kinds)}")
    table: dict[int, tuple[int, str]] = {}
    for r, b in base:
        if r not in table or b > table[r][0]:
            table[r] = (b, "base")
    if not any(r - 1 in table for r in table):
        raise ValueError("base needs two pairs with consecutive r")
    r = min(r for r in table if r - 1 in table)
    while r < up_to:
        if r in table and r - 1 in table:
            b = min(table[r][0], table[r - 1][0] + 1)
            if r + 1 not in table or table[r + 1][0] < b + 1:
                table[r + 1] = (b + 1, "derived-by-lemma")
        r += 1
    return [(r, b, lab) for r, (b, lab) in sorted(table.items()) if r <= max(up_to, max(table))]
