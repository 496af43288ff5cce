# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
# distutils: language = c++
"""Compiled kernels; same contracts as ``_kernels_py``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int8_t, int32_t, int64_t, uint64_t
from libcpp.vector cimport vector
from libcpp.algorithm cimport sort as cpp_sort

cnp.import_array()

cdef extern from *:
    ctypedef long long i128 "__int128"

BACKEND = "cython"

DEF CRAVAT = 0
DEF NECKLACE = 1
DEF BOWTIE = 2
DEF SKIRT = 3
DEF PANT = 4

cdef int NVAR[5]
NVAR[:] = [1, 4, 2, 1, 3]


cdef inline int8_t _orient(int64_t px, int64_t py, int64_t qx, int64_t qy,
                           int64_t rx, int64_t ry) noexcept nogil:
    cdef i128 d = (<i128>(qx - px)) * (<i128>(ry - py)) - (<i128>(qy - py)) * (<i128>(rx - px))
    return (d > 0) - (d < 0)


cdef void _fill_table(const int64_t[::1] xs, const int64_t[::1] ys, int8_t[:, :, ::1] T) noexcept nogil:
    cdef Py_ssize_t n = xs.shape[0], a, b, p
    cdef int8_t o
    for a in range(n):
        for b in range(a + 1, n):
            for p in range(n):
                o = _orient(xs[a], ys[a], xs[b], ys[b], xs[p], ys[p])
                T[p, a, b] = o
                T[p, b, a] = -o
        for p in range(n):
            T[p, a, a] = 0


def orientation_table(xs, ys):
    cdef const int64_t[::1] X = np.ascontiguousarray(xs, dtype=np.int64)
    cdef const int64_t[::1] Y = np.ascontiguousarray(ys, dtype=np.int64)
    n = X.shape[0]
    out = np.zeros((n, n, n), dtype=np.int8)
    cdef int8_t[:, :, ::1] T = out
    _fill_table(X, Y, T)
    return out


cdef inline bint _tri(const int8_t[:, ::1] s, int a, int b, int c) noexcept nogil:
    return s[a, b] > 0 and s[b, c] > 0 and s[c, a] > 0


cdef inline bint _bow(const int8_t[:, ::1] s, int* h, int k) noexcept nogil:
    cdef int a = h[k], b = h[(k + 1) & 3], c = h[(k + 2) & 3], d = h[(k + 3) & 3]
    return s[a, b] > 0 and s[a, c] < 0 and s[b, d] > 0


cdef inline bint _contains(const int8_t[:, ::1] s, int kind, int var, int* h) noexcept nogil:
    cdef int a, b
    if kind == CRAVAT:
        return s[h[0], h[1]] > 0 and s[h[1], h[2]] > 0 and s[h[2], h[3]] > 0 and s[h[3], h[0]] > 0
    if kind == NECKLACE:
        a = h[var]
        b = h[(var + 1) & 3]
        return _tri(s, a, b, h[(var + 2) & 3]) or _tri(s, a, b, h[(var + 3) & 3])
    if kind == BOWTIE:
        if var == 0:
            return _bow(s, h, 1) or _bow(s, h, 3)
        return _bow(s, h, 0) or _bow(s, h, 2)
    if kind == SKIRT:
        return _tri(s, h[0], h[1], h[2])
    # pant
    return _tri(s, h[0], h[1], h[2]) and not _tri(s, h[var], h[(var + 1) % 3], h[3])


cdef bint _canonical(const int8_t[:, :, ::1] T, int a, int b, int c, int d, int* h) noexcept nogil:
    """Fill h with the canonical order; return True for convex position."""
    cdef int q[4]
    cdef int t, s, x, u, v, w, tmp, o, y, z1, z2, i
    cdef int rest[3]
    q[0] = a; q[1] = b; q[2] = c; q[3] = d
    for t in range(4):
        x = q[t]
        i = 0
        for s in range(4):
            if s != t:
                rest[i] = q[s]
                i += 1
        u = rest[0]; v = rest[1]; w = rest[2]
        o = T[w, u, v]
        if T[x, u, v] == o and T[x, v, w] == o and T[x, w, u] == o:
            if o < 0:
                tmp = v; v = w; w = tmp
            h[0] = u; h[1] = v; h[2] = w; h[3] = x
            return False
    h[0] = a
    rest[0] = b; rest[1] = c; rest[2] = d
    h[1] = -1; h[3] = -1
    for i in range(3):
        y = rest[i]
        z1 = rest[(i + 1) % 3]
        z2 = rest[(i + 2) % 3]
        if T[z1, a, y] > 0 and T[z2, a, y] > 0:
            h[1] = y
        elif T[z1, a, y] < 0 and T[z2, a, y] < 0:
            h[3] = y
    for i in range(3):
        if rest[i] != h[1] and rest[i] != h[3]:
            h[2] = rest[i]
    return True


def instance_table(xs, ys, int kind_mask, bint empty_only=True):
    cdef const int64_t[::1] X = np.ascontiguousarray(xs, dtype=np.int64)
    cdef const int64_t[::1] Y = np.ascontiguousarray(ys, dtype=np.int64)
    cdef int n = X.shape[0]
    if n > 64:
        raise ValueError("instance_table supports at most 64 points")
    tab = np.zeros((n, n, n), dtype=np.int8)
    cdef int8_t[:, :, ::1] T = tab
    _fill_table(X, Y, T)
    cdef vector[int32_t] rows
    cdef vector[uint64_t] inside
    cdef int a, b, c, d, p, kind, var, kstart, kstop
    cdef int h[4]
    cdef bint convex
    cdef uint64_t mask
    with nogil:
        for a in range(n):
            for b in range(a + 1, n):
                for c in range(b + 1, n):
                    for d in range(c + 1, n):
                        convex = _canonical(T, a, b, c, d, h)
                        if convex:
                            kstart = CRAVAT; kstop = BOWTIE + 1
                        else:
                            kstart = SKIRT; kstop = PANT + 1
                        for kind in range(kstart, kstop):
                            if not ((kind_mask >> kind) & 1):
                                continue
                            for var in range(NVAR[kind]):
                                mask = 0
                                for p in range(n):
                                    if p == a or p == b or p == c or p == d:
                                        continue
                                    if _contains(T[p], kind, var, h):
                                        mask |= (<uint64_t>1) << p
                                        if empty_only:
                                            break
                                if empty_only and mask:
                                    continue
                                rows.push_back(h[0]); rows.push_back(h[1])
                                rows.push_back(h[2]); rows.push_back(h[3])
                                rows.push_back(kind); rows.push_back(var)
                                inside.push_back(mask)
    m = inside.size()
    out_rows = np.empty((m, 6), dtype=np.int32)
    out_inside = np.empty(m, dtype=np.uint64)
    cdef int32_t[:, ::1] R = out_rows
    cdef uint64_t[::1] I = out_inside
    cdef size_t t
    for t in range(m):
        for a in range(6):
            R[t, a] = rows[6 * t + a]
        I[t] = inside[t]
    return out_rows, out_inside


def cell_hits(signs, rows):
    cdef const int8_t[:, :, ::1] S = np.ascontiguousarray(signs, dtype=np.int8)
    cdef const int32_t[:, ::1] R = np.ascontiguousarray(np.asarray(rows).reshape(-1, 6), dtype=np.int32)
    cdef Py_ssize_t C = S.shape[0], M = R.shape[0], c, t
    out = np.zeros((C, M), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] O = out
    cdef int h[4]
    with nogil:
        for c in range(C):
            for t in range(M):
                h[0] = R[t, 0]; h[1] = R[t, 1]; h[2] = R[t, 2]; h[3] = R[t, 3]
                if _contains(S[c], R[t, 4], R[t, 5], h):
                    O[c, t] = 1
    return out


def quad_masks(rows):
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, 6)
    one = np.uint64(1)
    m = np.zeros(len(rows), dtype=np.uint64)
    for j in range(4):
        m |= one << rows[:, j].astype(np.uint64)
    return m


def count_monochromatic(qmasks, uint64_t red_mask):
    cdef const uint64_t[::1] Q = np.ascontiguousarray(qmasks, dtype=np.uint64)
    cdef Py_ssize_t i
    cdef uint64_t x
    cdef long total = 0
    for i in range(Q.shape[0]):
        x = Q[i] & red_mask
        if x == 0 or x == Q[i]:
            total += 1
    return total


def find_coloring(qmasks, int n, uint64_t start=0, long long stop=-1):
    uniq = np.unique(np.asarray(qmasks, dtype=np.uint64))
    cdef const uint64_t[::1] Q = np.ascontiguousarray(uniq)
    cdef Py_ssize_t m = Q.shape[0], i
    cdef uint64_t c, red, x, end
    if n > 64:
        raise ValueError("at most 64 points")
    if stop < 0:
        end = (<uint64_t>1) << (n - 1 if n > 0 else 0)
    else:
        end = <uint64_t>stop
    cdef bint bad
    with nogil:
        c = start
        while c < end:
            red = (c << 1) | 1
            bad = False
            for i in range(m):
                x = Q[i] & red
                if x == 0 or x == Q[i]:
                    bad = True
                    break
            if not bad:
                with gil:
                    return int(red)
            c += 1
    return -1


def empty_mono_count(xs, ys, uint64_t red_mask, int kind_mask):
    """Number of empty monochromatic instances of the kinds, without allocating rows."""
    cdef const int64_t[::1] X = np.ascontiguousarray(xs, dtype=np.int64)
    cdef const int64_t[::1] Y = np.ascontiguousarray(ys, dtype=np.int64)
    cdef int n = X.shape[0]
    if n > 64:
        raise ValueError("at most 64 points")
    tab = np.zeros((n, n, n), dtype=np.int8)
    cdef int8_t[:, :, ::1] T = tab
    _fill_table(X, Y, T)
    cdef int a, b, c, d, p, kind, var, kstart, kstop
    cdef int h[4]
    cdef uint64_t qm, x
    cdef long total = 0
    cdef bint hit
    with nogil:
        for a in range(n):
            for b in range(a + 1, n):
                for c in range(b + 1, n):
                    for d in range(c + 1, n):
                        qm = ((<uint64_t>1) << a) | ((<uint64_t>1) << b) | ((<uint64_t>1) << c) | ((<uint64_t>1) << d)
                        x = qm & red_mask
                        if x != 0 and x != qm:
                            continue
                        if _canonical(T, a, b, c, d, h):
                            kstart = CRAVAT; kstop = BOWTIE + 1
                        else:
                            kstart = SKIRT; kstop = PANT + 1
                        for kind in range(kstart, kstop):
                            if not ((kind_mask >> kind) & 1):
                                continue
                            for var in range(NVAR[kind]):
                                hit = False
                                for p in range(n):
                                    if p == a or p == b or p == c or p == d:
                                        continue
                                    if _contains(T[p], kind, var, h):
                                        hit = True
                                        break
                                if not hit:
                                    total += 1
    return total


cdef struct Key:
    int64_t dx
    int64_t dy
    int idx


cdef bint _ccw_less(const Key& u, const Key& v) noexcept nogil:
    cdef i128 d = (<i128>u.dx) * (<i128>v.dy) - (<i128>u.dy) * (<i128>v.dx)
    return d > 0


cdef vector[int] _anchored(const int64_t[::1] X, const int64_t[::1] Y, int p) noexcept nogil:
    cdef vector[Key] keys
    cdef Key k
    cdef int q, n = X.shape[0]
    for q in range(n):
        if Y[q] > Y[p] or (Y[q] == Y[p] and X[q] > X[p]):
            k.dx = X[q] - X[p]
            k.dy = Y[q] - Y[p]
            k.idx = q
            keys.push_back(k)
    cpp_sort(keys.begin(), keys.end(), _ccw_less)
    cdef vector[int] out
    for q in range(<int>keys.size()):
        out.push_back(keys[q].idx)
    return out


def max_convex_chain(xs, ys, int k=0):
    cdef const int64_t[::1] X = np.ascontiguousarray(xs, dtype=np.int64)
    cdef const int64_t[::1] Y = np.ascontiguousarray(ys, dtype=np.int64)
    cdef int n = X.shape[0]
    cdef int p, m, i, j, hh, val, bp, a, b, t, bestlen = min(n, 2)
    cdef vector[int] o, best, chain
    cdef vector[int] L, par
    cdef bint done = False
    for i in range(bestlen):
        best.push_back(i)
    with nogil:
        for p in range(n):
            if done:
                break
            o = _anchored(X, Y, p)
            m = o.size()
            if m + 1 <= bestlen:
                continue
            L.assign(m * m, 0)
            par.assign(m * m, -1)
            for j in range(m):
                if done:
                    break
                for i in range(j):
                    val = 3
                    bp = -1
                    for hh in range(i):
                        if L[hh * m + i] + 1 > val and _orient(X[o[hh]], Y[o[hh]], X[o[i]], Y[o[i]], X[o[j]], Y[o[j]]) > 0:
                            val = L[hh * m + i] + 1
                            bp = hh
                    L[i * m + j] = val
                    par[i * m + j] = bp
                    if val > bestlen and _orient(X[o[i]], Y[o[i]], X[o[j]], Y[o[j]], X[p], Y[p]) > 0:
                        chain.clear()
                        chain.push_back(j)
                        chain.push_back(i)
                        a = i
                        b = j
                        while par[a * m + b] >= 0:
                            t = par[a * m + b]
                            b = a
                            a = t
                            chain.push_back(a)
                        best.clear()
                        best.push_back(p)
                        for t in range(<int>chain.size() - 1, -1, -1):
                            best.push_back(o[chain[t]])
                        bestlen = best.size()
                        if k > 0 and bestlen >= k:
                            done = True
                            break
    out = [best[t] for t in range(<int>best.size())]
    if n >= 3 and len(out) < 3:
        out = [0, 1, 2]
    return out


def count_convex(xs, ys, int k):
    if k < 3:
        raise ValueError("k must be >= 3")
    cdef const int64_t[::1] X = np.ascontiguousarray(xs, dtype=np.int64)
    cdef const int64_t[::1] Y = np.ascontiguousarray(ys, dtype=np.int64)
    cdef int n = X.shape[0]
    cdef int p, m, i, j, q, x, a, b, t
    cdef vector[int] o
    cdef vector[char] empty
    cdef vector[int64_t] G, H, G2, H2
    cdef int64_t gons = 0, holes = 0, g, h
    cdef bint ok
    with nogil:
        for p in range(n):
            o = _anchored(X, Y, p)
            m = o.size()
            if m + 1 < k:
                continue
            empty.assign(m * m, 0)
            for i in range(m):
                for j in range(i + 1, m):
                    a = o[i]
                    b = o[j]
                    ok = True
                    for x in range(n):
                        if x == p or x == a or x == b:
                            continue
                        if (_orient(X[p], Y[p], X[a], Y[a], X[x], Y[x]) > 0
                                and _orient(X[a], Y[a], X[b], Y[b], X[x], Y[x]) > 0
                                and _orient(X[b], Y[b], X[p], Y[p], X[x], Y[x]) > 0):
                            ok = False
                            break
                    empty[i * m + j] = ok
            G.assign(m * m, 1)
            H.assign(m * m, 0)
            for i in range(m * m):
                H[i] = empty[i]
            for t in range(4, k + 1):
                G2.assign(m * m, 0)
                H2.assign(m * m, 0)
                for j in range(m):
                    for i in range(j):
                        g = 0
                        h = 0
                        for q in range(i):
                            if _orient(X[o[q]], Y[o[q]], X[o[i]], Y[o[i]], X[o[j]], Y[o[j]]) > 0:
                                g += G[q * m + i]
                                h += H[q * m + i]
                        G2[i * m + j] = g
                        H2[i * m + j] = h if empty[i * m + j] else 0
                G.swap(G2)
                H.swap(H2)
            for j in range(m):
                for i in range(j):
                    if _orient(X[o[i]], Y[o[i]], X[o[j]], Y[o[j]], X[p], Y[p]) > 0:
                        gons += G[i * m + j]
                        holes += H[i * m + j]
    return int(gons), int(holes)
