"""Pure-Python kernels. Reference semantics for the compiled ``_kernels`` module.

Conventions shared with the compiled version:

* ``T[p][a][b] = orient(P_a, P_b, P_p)``; a point's 2-D slice is its sign
  vector against every directed line through two points.
* Instance rows are ``(q0, q1, q2, q3, kind, variant)``. Convex quadruples list
  the hull counterclockwise from the smallest index; non-convex ones list the
  three apexes counterclockwise from the smallest index, then the interior.
* Kinds: 0 cravat, 1 necklace, 2 bowtie, 3 skirt, 4 pant.
"""
from __future__ import annotations

from functools import cmp_to_key

import numpy as np

CRAVAT, NECKLACE, BOWTIE, SKIRT, PANT = range(5)
VARIANTS = (1, 4, 2, 1, 3)

BACKEND = "python"


def _orient(px, py, qx, qy, rx, ry) -> int:
    d = (qx - px) * (ry - py) - (qy - py) * (rx - px)
    return (d > 0) - (d < 0)


def _table(xs, ys):
    n = len(xs)
    xs = [int(v) for v in xs]
    ys = [int(v) for v in ys]
    T = [[[0] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        ax, ay = xs[a], ys[a]
        for b in range(a + 1, n):
            bx, by = xs[b], ys[b]
            for p in range(n):
                o = _orient(ax, ay, bx, by, xs[p], ys[p])
                T[p][a][b] = o
                T[p][b][a] = -o
    return T


def orientation_table(xs, ys) -> np.ndarray:
    return np.array(_table(xs, ys), dtype=np.int8).reshape(len(xs), len(xs), len(xs))


def canonical_quadruple(T, a, b, c, d):
    """Return (convex, ordered 4-tuple) for sorted indices a < b < c < d."""
    q = (a, b, c, d)
    for t in range(4):
        x = q[t]
        u, v, w = [q[s] for s in range(4) if s != t]
        o = T[w][u][v]
        if T[x][u][v] == o and T[x][v][w] == o and T[x][w][u] == o:
            if T[w][u][v] < 0:
                v, w = w, v
            return False, (u, v, w, x)
    h0 = a
    rest = [b, c, d]
    h1 = h3 = -1
    for y in rest:
        others = [z for z in rest if z != y]
        if all(T[z][h0][y] > 0 for z in others):
            h1 = y
        elif all(T[z][h0][y] < 0 for z in others):
            h3 = y
    h2 = [z for z in rest if z != h1 and z != h3][0]
    return True, (h0, h1, h2, h3)


def _tri(s, a, b, c) -> bool:
    return s[a][b] > 0 and s[b][c] > 0 and s[c][a] > 0


def _bowtie_cell(s, h, k) -> bool:
    a, b, c, d = h[k], h[(k + 1) % 4], h[(k + 2) % 4], h[(k + 3) % 4]
    return s[a][b] > 0 and s[a][c] < 0 and s[b][d] > 0


def contains(s, kind: int, variant: int, h) -> bool:
    """Closed-region membership of a point whose sign slice is ``s``."""
    if kind == CRAVAT:
        return s[h[0]][h[1]] > 0 and s[h[1]][h[2]] > 0 and s[h[2]][h[3]] > 0 and s[h[3]][h[0]] > 0
    if kind == NECKLACE:
        k = variant
        a, b = h[k], h[(k + 1) % 4]
        return _tri(s, a, b, h[(k + 2) % 4]) or _tri(s, a, b, h[(k + 3) % 4])
    if kind == BOWTIE:
        if variant == 0:
            return _bowtie_cell(s, h, 1) or _bowtie_cell(s, h, 3)
        return _bowtie_cell(s, h, 0) or _bowtie_cell(s, h, 2)
    if kind == SKIRT:
        return _tri(s, h[0], h[1], h[2])
    if kind == PANT:
        j = variant
        return _tri(s, h[0], h[1], h[2]) and not _tri(s, h[j], h[(j + 1) % 3], h[3])
    raise ValueError(f"unknown kind {kind}")


def instance_table(xs, ys, kind_mask: int, empty_only: bool = True):
    """All instances of the requested kinds (or only the empty ones).

    Returns ``rows`` (m, 6) int32 and ``inside`` (m,) uint64 bitmasks of the
    other points lying in each region (n <= 64).
    """
    n = len(xs)
    if n > 64:
        raise ValueError("instance_table supports at most 64 points")
    T = _table(xs, ys)
    rows, inside = [], []
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                for d in range(c + 1, n):
                    convex, h = canonical_quadruple(T, a, b, c, d)
                    kinds = (CRAVAT, NECKLACE, BOWTIE) if convex else (SKIRT, PANT)
                    for kind in kinds:
                        if not kind_mask >> kind & 1:
                            continue
                        for var in range(VARIANTS[kind]):
                            mask = 0
                            for p in range(n):
                                if p == a or p == b or p == c or p == d:
                                    continue
                                if contains(T[p], kind, var, h):
                                    mask |= 1 << p
                                    if empty_only:
                                        break
                            if empty_only and mask:
                                continue
                            rows.append((*h, kind, var))
                            inside.append(mask)
    return (np.array(rows, dtype=np.int32).reshape(-1, 6), np.array(inside, dtype=np.uint64))


def cell_hits(signs, rows) -> np.ndarray:
    """Membership matrix (cells x instances) from per-cell sign slices."""
    signs = np.asarray(signs)
    C = signs.shape[0]
    out = np.zeros((C, len(rows)), dtype=np.uint8)
    rows = [tuple(int(v) for v in r) for r in rows]
    for c in range(C):
        s = signs[c].tolist()
        for t, r in enumerate(rows):
            if contains(s, r[4], r[5], r[:4]):
                out[c, t] = 1
    return out


def quad_masks(rows) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, 6)
    one = np.uint64(1)
    m = np.zeros(len(rows), dtype=np.uint64)
    for j in range(4):
        m |= one << rows[:, j].astype(np.uint64)
    return m


def count_monochromatic(qmasks, red_mask: int) -> int:
    red = int(red_mask)
    total = 0
    for m in qmasks:
        m = int(m)
        x = m & red
        if x == 0 or x == m:
            total += 1
    return total


def find_coloring(qmasks, n: int, start: int = 0, stop: int = -1) -> int:
    """First red mask (point 0 red) with no monochromatic quadruple, or -1.

    Colorings are enumerated as ``red = (c << 1) | 1`` for c in [start, stop).
    """
    if stop < 0:
        stop = 1 << max(n - 1, 0)
    masks = sorted({int(m) for m in qmasks})
    for c in range(start, stop):
        red = (c << 1) | 1
        for m in masks:
            x = m & red
            if x == 0 or x == m:
                break
        else:
            return red
    return -1


def empty_mono_count(xs, ys, red_mask: int, kind_mask: int) -> int:
    rows, _ = instance_table(xs, ys, kind_mask, True)
    return count_monochromatic(quad_masks(rows), red_mask)


def _anchored(xs, ys, p):
    px, py = xs[p], ys[p]
    others = [q for q in range(len(xs)) if (ys[q], xs[q]) > (py, px)]
    others.sort(key=cmp_to_key(lambda a, b: -_orient(px, py, xs[a], ys[a], xs[b], ys[b])))
    return others


def max_convex_chain(xs, ys, k: int = 0) -> list[int]:
    """Vertices of a largest convex polygon (ccw), stopping early once size >= k."""
    xs = [int(v) for v in xs]
    ys = [int(v) for v in ys]
    n = len(xs)
    best: list[int] = list(range(min(n, 2)))
    for p in range(n):
        o = _anchored(xs, ys, p)
        m = len(o)
        if m + 1 <= len(best):
            continue
        px, py = xs[p], ys[p]
        L = [[0] * m for _ in range(m)]
        par = [[-1] * m for _ in range(m)]
        for j in range(m):
            jx, jy = xs[o[j]], ys[o[j]]
            for i in range(j):
                ix, iy = xs[o[i]], ys[o[i]]
                val, bp = 3, -1
                for h in range(i):
                    if L[h][i] + 1 > val and _orient(xs[o[h]], ys[o[h]], ix, iy, jx, jy) > 0:
                        val, bp = L[h][i] + 1, h
                L[i][j] = val
                par[i][j] = bp
                if val > len(best) and _orient(ix, iy, jx, jy, px, py) > 0:
                    chain = [j, i]
                    a, b = i, j
                    while par[a][b] >= 0:
                        a, b = par[a][b], a
                        chain.append(a)
                    best = [p] + [o[t] for t in reversed(chain)]
                    if k and len(best) >= k:
                        return best
    if n >= 3 and len(best) < 3:
        best = list(range(3))
    return best


def count_convex(xs, ys, k: int) -> tuple[int, int]:
    """Number of convex k-gons and of k-holes, by the anchored radial DP."""
    xs = [int(v) for v in xs]
    ys = [int(v) for v in ys]
    n = len(xs)
    gons = holes = 0
    if k < 3:
        raise ValueError("k must be >= 3")
    for p in range(n):
        o = _anchored(xs, ys, p)
        m = len(o)
        if m + 1 < k:
            continue
        px, py = xs[p], ys[p]
        empty = [[False] * m for _ in range(m)]
        for i in range(m):
            for j in range(i + 1, m):
                a, b = o[i], o[j]
                ok = True
                for x in range(n):
                    if x == p or x == a or x == b:
                        continue
                    if (_orient(px, py, xs[a], ys[a], xs[x], ys[x]) > 0
                            and _orient(xs[a], ys[a], xs[b], ys[b], xs[x], ys[x]) > 0
                            and _orient(xs[b], ys[b], px, py, xs[x], ys[x]) > 0):
                        ok = False
                        break
                empty[i][j] = ok
        G = [[1] * m for _ in range(m)]
        H = [[1 if empty[i][j] else 0 for j in range(m)] for i in range(m)]
        for _t in range(4, k + 1):
            G2 = [[0] * m for _ in range(m)]
            H2 = [[0] * m for _ in range(m)]
            for j in range(m):
                for i in range(j):
                    g = h = 0
                    for q in range(i):
                        if _orient(xs[o[q]], ys[o[q]], xs[o[i]], ys[o[i]], xs[o[j]], ys[o[j]]) > 0:
                            g += G[q][i]
                            h += H[q][i]
                    G2[i][j] = g
                    H2[i][j] = h if empty[i][j] else 0
            G, H = G2, H2
        for j in range(m):
            for i in range(j):
                if _orient(xs[o[i]], ys[o[i]], xs[o[j]], ys[o[j]], px, py) > 0:
                    gons += G[i][j]
                    holes += H[i][j]
    return gons, holes
