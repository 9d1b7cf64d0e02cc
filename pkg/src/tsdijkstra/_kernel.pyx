# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Dijkstra loop with binary, Fibonacci and timestamp heaps.

Mirrors ``dijkstra._run_python`` and the pure-Python heaps operation for
operation, so structural-step and comparison counters match exactly.  Each
vertex is pushed at most once per run, so heap nodes are indexed by vertex.
"""
from libc.stdint cimport int64_t, uint64_t, INT64_MAX
from libc.stdlib cimport malloc, free
from libc.math cimport log2

import numpy as np

DEF MAXB = 63
DEF TABLE = 130


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil


cdef struct Ctx:
    int64_t *kd
    int64_t *parent
    int64_t *child
    int64_t *left
    int64_t *right
    int64_t *degree
    char *mark
    int64_t *buf
    int64_t table[TABLE]
    int64_t steps
    int64_t cmps
    # binary heap
    int64_t *bh
    int64_t *pos
    int64_t bsize
    # plain Fibonacci heap
    int64_t fmin
    int64_t fsize
    # timestamp heap
    int64_t *pushed
    int64_t t
    int64_t nb
    int64_t bcnt[MAXB]
    int64_t ilo[MAXB * 3]
    int64_t ihi[MAXB * 3]
    int64_t imin[MAXB * 3]
    int64_t isize[MAXB * 3]
    int64_t md[MAXB]
    int64_t mv[MAXB]
    uint64_t bits


cdef inline bint klt(int64_t d1, int64_t v1, int64_t d2, int64_t v2) nogil:
    return d1 < d2 or (d1 == d2 and v1 < v2)


cdef inline bint vlt(Ctx *c, int64_t x, int64_t y) nogil:
    return klt(c.kd[x], x, c.kd[y], y)


cdef inline int ctz(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef inline int msb(uint64_t x) nogil:
    return 63 - __builtin_clzll(x)


# -- Fibonacci heap over the shared node arena ------------------------------------

cdef inline void add_root(Ctx *c, int64_t m, int64_t x) nogil:
    c.left[x] = c.left[m]
    c.right[x] = m
    c.right[c.left[m]] = x
    c.left[m] = x
    c.steps += 1


cdef void fib_push(Ctx *c, int64_t *hmin, int64_t *hsize, int64_t v, int64_t d) nogil:
    c.kd[v] = d
    c.parent[v] = -1
    c.child[v] = -1
    c.left[v] = v
    c.right[v] = v
    c.degree[v] = 0
    c.mark[v] = 0
    hsize[0] += 1
    if hmin[0] == -1:
        hmin[0] = v
        c.steps += 1
        return
    add_root(c, hmin[0], v)
    c.cmps += 1
    if vlt(c, v, hmin[0]):
        hmin[0] = v


cdef void fib_meld(Ctx *c, int64_t *amin, int64_t *asize, int64_t bmin, int64_t bsize) nogil:
    cdef int64_t a, al, bl
    if bmin != -1:
        a = amin[0]
        if a == -1:
            amin[0] = bmin
        else:
            al = c.left[a]
            bl = c.left[bmin]
            c.right[al] = bmin
            c.left[bmin] = al
            c.right[bl] = a
            c.left[a] = bl
            c.steps += 1
            c.cmps += 1
            if vlt(c, bmin, a):
                amin[0] = bmin
        asize[0] += bsize


cdef inline void link(Ctx *c, int64_t y, int64_t x) nogil:
    cdef int64_t ch
    c.right[c.left[y]] = c.right[y]
    c.left[c.right[y]] = c.left[y]
    c.parent[y] = x
    ch = c.child[x]
    if ch == -1:
        c.child[x] = y
        c.left[y] = y
        c.right[y] = y
    else:
        c.left[y] = c.left[ch]
        c.right[y] = ch
        c.right[c.left[ch]] = y
        c.left[ch] = y
    c.degree[x] += 1
    c.mark[y] = 0
    c.steps += 1


cdef inline void cut(Ctx *c, int64_t *hmin, int64_t x, int64_t y) nogil:
    if c.right[x] == x:
        c.child[y] = -1
    else:
        if c.child[y] == x:
            c.child[y] = c.right[x]
        c.right[c.left[x]] = c.right[x]
        c.left[c.right[x]] = c.left[x]
    c.degree[y] -= 1
    c.parent[x] = -1
    c.mark[x] = 0
    add_root(c, hmin[0], x)


cdef void fib_decrease(Ctx *c, int64_t *hmin, int64_t v, int64_t d) nogil:
    cdef int64_t p, y, z
    c.kd[v] = d
    p = c.parent[v]
    if p != -1:
        c.cmps += 1
        if vlt(c, v, p):
            cut(c, hmin, v, p)
            y = p
            z = c.parent[y]
            while z != -1:
                if not c.mark[y]:
                    c.mark[y] = 1
                    break
                cut(c, hmin, y, z)
                y = z
                z = c.parent[y]
    c.cmps += 1
    if vlt(c, v, hmin[0]):
        hmin[0] = v


cdef void consolidate(Ctx *c, int64_t *hmin, int64_t start) nogil:
    cdef int64_t count = 0, i, w, x, y, d, maxd = -1, best = -1, tmp
    cdef int64_t *roots = c.buf
    x = start
    while True:
        roots[count] = x
        count += 1
        x = c.right[x]
        if x == start:
            break
    c.steps += count
    for i in range(count):
        x = roots[i]
        d = c.degree[x]
        while c.table[d] != -1:
            y = c.table[d]
            c.cmps += 1
            if vlt(c, y, x):
                tmp = x
                x = y
                y = tmp
            link(c, y, x)
            c.table[d] = -1
            d += 1
        c.table[d] = x
        if d > maxd:
            maxd = d
    for d in range(maxd + 1):
        x = c.table[d]
        if x != -1:
            if best == -1:
                best = x
            else:
                c.cmps += 1
                if vlt(c, x, best):
                    best = x
            c.table[d] = -1
    hmin[0] = best


cdef int64_t fib_pop(Ctx *c, int64_t *hmin, int64_t *hsize) nogil:
    cdef int64_t z = hmin[0], ch, count = 0, i, x, start
    ch = c.child[z]
    if ch != -1:
        x = ch
        while True:
            c.buf[count] = x
            count += 1
            x = c.right[x]
            if x == ch:
                break
        for i in range(count):
            x = c.buf[i]
            c.parent[x] = -1
            c.mark[x] = 0
            c.left[x] = c.left[z]
            c.right[x] = z
            c.right[c.left[z]] = x
            c.left[z] = x
            c.steps += 1
        c.child[z] = -1
    c.steps += 1
    if c.right[z] == z:
        hmin[0] = -1
    else:
        start = c.right[z]
        c.right[c.left[z]] = start
        c.left[start] = c.left[z]
        consolidate(c, hmin, start)
    c.left[z] = z
    c.right[z] = z
    hsize[0] -= 1
    return z


# -- binary heap ----------------------------------------------------------------------

cdef void sift_up(Ctx *c, int64_t i) nogil:
    cdef int64_t item = c.bh[i], p
    while i > 0:
        p = (i - 1) >> 1
        c.cmps += 1
        if vlt(c, item, c.bh[p]):
            c.bh[i] = c.bh[p]
            c.pos[c.bh[i]] = i
            c.steps += 1
            i = p
        else:
            break
    c.bh[i] = item
    c.pos[item] = i


cdef void sift_down(Ctx *c, int64_t i) nogil:
    cdef int64_t n = c.bsize, item = c.bh[i], ch
    while True:
        ch = 2 * i + 1
        if ch >= n:
            break
        if ch + 1 < n:
            c.cmps += 1
            if vlt(c, c.bh[ch + 1], c.bh[ch]):
                ch += 1
        c.cmps += 1
        if vlt(c, c.bh[ch], item):
            c.bh[i] = c.bh[ch]
            c.pos[c.bh[i]] = i
            c.steps += 1
            i = ch
        else:
            break
    c.bh[i] = item
    c.pos[item] = i


cdef void bin_push(Ctx *c, int64_t v, int64_t d) nogil:
    c.kd[v] = d
    c.bh[c.bsize] = v
    c.bsize += 1
    sift_up(c, c.bsize - 1)


cdef int64_t bin_pop(Ctx *c) nogil:
    cdef int64_t v = c.bh[0], last
    c.bsize -= 1
    last = c.bh[c.bsize]
    if c.bsize > 0:
        c.bh[0] = last
        c.pos[last] = 0
        sift_down(c, 0)
    return v


# -- timestamp heap -------------------------------------------------------------------

cdef inline void refresh_bit(Ctx *c, int64_t j) nogil:
    cdef uint64_t rest = c.bits >> (j + 1)
    cdef int64_t k
    if rest == 0:
        c.bits |= (<uint64_t>1) << j
        return
    k = j + 1 + ctz(rest)
    c.cmps += 1
    if not klt(c.md[k], c.mv[k], c.md[j], c.mv[j]):
        c.bits |= (<uint64_t>1) << j
    else:
        c.bits &= ~((<uint64_t>1) << j)


cdef void bucket_min(Ctx *c, int64_t j) nogil:
    cdef int64_t s, m
    cdef bint have = False
    c.md[j] = INT64_MAX
    c.mv[j] = INT64_MAX
    for s in range(c.bcnt[j]):
        m = c.imin[j * 3 + s]
        if m != -1:
            if not have:
                c.md[j] = c.kd[m]
                c.mv[j] = m
                have = True
            else:
                c.cmps += 1
                if klt(c.kd[m], m, c.md[j], c.mv[j]):
                    c.md[j] = c.kd[m]
                    c.mv[j] = m


cdef int ts_push(Ctx *c, int64_t v, int64_t d) nogil:
    cdef int64_t a = c.t, j, idx, o, n, lo, hi, mm, ms, dst
    c.pushed[v] = a
    c.t = a + 1
    if c.nb == 0:
        c.nb = 1
        c.bcnt[0] = 0
        c.md[0] = INT64_MAX
        c.mv[0] = INT64_MAX
    idx = c.bcnt[0]
    c.ilo[idx] = a
    c.ihi[idx] = a + 1
    c.imin[idx] = -1
    c.isize[idx] = 0
    fib_push(c, &c.imin[idx], &c.isize[idx], v, d)
    c.bcnt[0] += 1
    c.cmps += 1
    if klt(d, v, c.md[0], c.mv[0]):
        c.md[0] = d
        c.mv[0] = v
    refresh_bit(c, 0)
    j = 0
    while c.bcnt[j] == 3:
        o = j * 3
        n = j * 3 + 1
        fib_meld(c, &c.imin[o], &c.isize[o], c.imin[n], c.isize[n])
        lo = c.ilo[o]
        hi = c.ihi[n]
        mm = c.imin[o]
        ms = c.isize[o]
        c.ilo[o] = c.ilo[j * 3 + 2]
        c.ihi[o] = c.ihi[j * 3 + 2]
        c.imin[o] = c.imin[j * 3 + 2]
        c.isize[o] = c.isize[j * 3 + 2]
        c.bcnt[j] = 1
        if j + 1 == c.nb:
            if c.nb >= MAXB:
                return -1
            c.nb += 1
            c.bcnt[j + 1] = 0
            c.md[j + 1] = INT64_MAX
            c.mv[j + 1] = INT64_MAX
        dst = (j + 1) * 3 + c.bcnt[j + 1]
        c.ilo[dst] = lo
        c.ihi[dst] = hi
        c.imin[dst] = mm
        c.isize[dst] = ms
        c.bcnt[j + 1] += 1
        c.steps += 1
        bucket_min(c, j)
        if mm != -1:
            c.cmps += 1
            if klt(c.kd[mm], mm, c.md[j + 1], c.mv[j + 1]):
                c.md[j + 1] = c.kd[mm]
                c.mv[j + 1] = mm
        refresh_bit(c, j + 1)
        refresh_bit(c, j)
        j += 1
    return 0


cdef int64_t ts_locate(Ctx *c, int64_t v, int64_t *slot) nogil:
    cdef int64_t a = c.pushed[v], guess, j, s, lo, top, idx
    guess = msb(<uint64_t>(c.t - a))
    lo = guess - 2 if guess >= 2 else 0
    top = guess + 1 if guess + 1 < c.nb - 1 else c.nb - 1
    for j in range(lo, top + 1):
        for s in range(c.bcnt[j]):
            idx = j * 3 + s
            if c.ilo[idx] <= a and a < c.ihi[idx]:
                slot[0] = idx
                return j
    return -1


cdef int ts_decrease(Ctx *c, int64_t v, int64_t d) nogil:
    cdef int64_t slot = -1, j, jj
    cdef uint64_t below
    j = ts_locate(c, v, &slot)
    if j < 0:
        return -1
    fib_decrease(c, &c.imin[slot], v, d)
    c.cmps += 1
    if not klt(d, v, c.md[j], c.mv[j]):
        return 0
    c.md[j] = d
    c.mv[j] = v
    refresh_bit(c, j)
    if not ((c.bits >> j) & 1):
        return 0
    below = c.bits & (((<uint64_t>1) << j) - 1)
    while below:
        jj = msb(below)
        c.cmps += 1
        if klt(c.md[j], c.mv[j], c.md[jj], c.mv[jj]):
            c.bits &= ~((<uint64_t>1) << jj)
            below &= ~((<uint64_t>1) << jj)
            c.steps += 1
        else:
            break
    return 0


cdef int64_t ts_pop(Ctx *c) nogil:
    cdef int64_t j = ctz(c.bits), s, idx, best = -1, m, v, lvl
    for s in range(c.bcnt[j]):
        idx = j * 3 + s
        m = c.imin[idx]
        if m != -1:
            if best == -1:
                best = idx
            else:
                c.cmps += 1
                if vlt(c, m, c.imin[best]):
                    best = idx
    v = fib_pop(c, &c.imin[best], &c.isize[best])
    bucket_min(c, j)
    lvl = j
    while lvl >= 0:
        refresh_bit(c, lvl)
        c.steps += 1
        lvl -= 1
    return v


# -- driver -----------------------------------------------------------------------------

def dijkstra(indptr_, targets_, weights_, int64_t source, int kind):
    """Run Dijkstra; returns (order, dist, pushed_at, popped_at, parent,
    parent_edge, int counters, sum of log2 heap sizes at each pop)."""
    cdef const int64_t[::1] indptr = np.ascontiguousarray(indptr_, dtype=np.int64)
    cdef const int64_t[::1] targets = np.ascontiguousarray(targets_, dtype=np.int64)
    cdef const int64_t[::1] weights = np.ascontiguousarray(weights_, dtype=np.int64)
    cdef int64_t N = indptr.shape[0] - 1
    order_a = np.empty(N, dtype=np.int64)
    dist_a = np.full(N, -1, dtype=np.int64)
    a_a = np.full(N, -1, dtype=np.int64)
    b_a = np.full(N, -1, dtype=np.int64)
    par_a = np.full(N, -1, dtype=np.int64)
    pe_a = np.full(N, -1, dtype=np.int64)
    inh_a = np.zeros(N, dtype=np.int8)
    cdef int64_t[::1] order = order_a
    cdef int64_t[::1] dist = dist_a
    cdef int64_t[::1] A = a_a
    cdef int64_t[::1] B = b_a
    cdef int64_t[::1] parent = par_a
    cdef int64_t[::1] pedge = pe_a
    cdef signed char[::1] inheap = inh_a

    work = np.empty((8, max(N, 1)), dtype=np.int64)
    marks = np.zeros(max(N, 1), dtype=np.int8)
    cdef int64_t[:, ::1] W = work
    cdef signed char[::1] M = marks
    cdef Ctx c
    c.kd = &W[0, 0]
    c.parent = &W[1, 0]
    c.child = &W[2, 0]
    c.left = &W[3, 0]
    c.right = &W[4, 0]
    c.degree = &W[5, 0]
    c.buf = &W[6, 0]
    c.bh = &W[7, 0]
    c.pos = &W[7, 0]
    c.mark = <char *>&M[0]
    c.pushed = &A[0]
    c.steps = 0
    c.cmps = 0
    c.bsize = 0
    c.fmin = -1
    c.fsize = 0
    c.t = 0
    c.nb = 0
    c.bits = 0
    cdef int64_t i
    for i in range(TABLE):
        c.table[i] = -1
    pos_a = None
    if kind == 0:
        # binary heap needs its own position array
        pos_a = np.empty(max(N, 1), dtype=np.int64)
    cdef int64_t[::1] P
    if kind == 0:
        P = pos_a
        c.pos = &P[0]

    cdef int64_t t = 0, size = 0, npop = 0, relax = 0, dks = 0, pop_steps = 0
    cdef int64_t u, du, v, nd, e, before, status = 0
    cdef double log_size = 0.0

    with nogil:
        dist[source] = 0
        if kind == 0:
            bin_push(&c, source, 0)
        elif kind == 1:
            fib_push(&c, &c.fmin, &c.fsize, source, 0)
        else:
            status = ts_push(&c, source, 0)
        A[source] = 0
        inheap[source] = 1
        t = 1
        size = 1
        while size > 0 and status == 0:
            log_size += log2(<double>size)
            before = c.steps
            if kind == 0:
                u = bin_pop(&c)
            elif kind == 1:
                u = fib_pop(&c, &c.fmin, &c.fsize)
            else:
                u = ts_pop(&c)
            pop_steps += c.steps - before
            du = dist[u]
            size -= 1
            B[u] = t
            inheap[u] = 0
            order[npop] = u
            npop += 1
            for e in range(indptr[u], indptr[u + 1]):
                v = targets[e]
                nd = du + weights[e]
                if dist[v] == -1:
                    dist[v] = nd
                    if kind == 0:
                        bin_push(&c, v, nd)
                    elif kind == 1:
                        fib_push(&c, &c.fmin, &c.fsize, v, nd)
                    else:
                        status = ts_push(&c, v, nd)
                        if status != 0:
                            break
                    A[v] = t
                    t += 1
                    size += 1
                    inheap[v] = 1
                    parent[v] = u
                    pedge[v] = e
                elif inheap[v]:
                    relax += 1
                    if nd < dist[v]:
                        dist[v] = nd
                        if kind == 0:
                            c.kd[v] = nd
                            sift_up(&c, c.pos[v])
                        elif kind == 1:
                            fib_decrease(&c, &c.fmin, v, nd)
                        else:
                            status = ts_decrease(&c, v, nd)
                            if status != 0:
                                break
                        dks += 1
    if status != 0:
        raise OverflowError("timestamp heap ran out of buckets or lost an element")
    counters = (t, npop, dks, c.cmps + relax, c.cmps, relax, 0, c.steps, pop_steps)
    return (order_a[:npop].tolist(), dist_a.tolist(), a_a.tolist(), b_a.tolist(),
            par_a.tolist(), pe_a.tolist(), counters, log_size)
