# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; same interface as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int32_t, uint32_t

cnp.import_array()

cdef enum:
    MAXW = 4          # 256 points
    MAXDEPTH = 16     # arc size cap (order 13 needs 14)
    MAXV = 16         # oval size cap for cycle search
    OVERFLOW_BIT = 1

DEGREE_OVERFLOW = 1


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int popcount64(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef struct ArcState:
    int n
    int W
    int target
    int max_results
    int n_results
    int depth
    int32_t *join
    uint64_t *line_words
    int arc[MAXDEPTH]
    uint64_t blocked[MAXDEPTH + 1][MAXW]


cdef int free_count(ArcState *st, uint64_t *blocked, int start) nogil:
    cdef int total = 0, w, lo
    cdef uint64_t word
    for w in range(start >> 6, st.W):
        word = ~blocked[w]
        if w == (start >> 6):
            lo = start & 63
            word &= (~(<uint64_t>0)) << lo
        if w == st.W - 1 and (st.n & 63):
            word &= ((<uint64_t>1) << (st.n & 63)) - 1
        total += popcount64(word)
    return total


cdef int rec(ArcState *st, int start, list results) except -1:
    cdef int d = st.depth
    cdef int need = st.target - d
    cdef int c, a, i, w, g
    cdef uint64_t *cur = st.blocked[d]
    cdef uint64_t *nxt = st.blocked[d + 1]
    if need == 0:
        results.append(tuple(sorted([st.arc[i] for i in range(d)])))
        st.n_results += 1
        return 1 if st.n_results >= st.max_results else 0
    if free_count(st, cur, start) < need:
        return 0
    for c in range(start, st.n):
        if (cur[c >> 6] >> (c & 63)) & 1:
            continue
        for w in range(st.W):
            nxt[w] = cur[w]
        nxt[c >> 6] |= (<uint64_t>1) << (c & 63)
        for i in range(d):
            a = st.arc[i]
            g = st.join[a * st.n + c]
            for w in range(st.W):
                nxt[w] |= st.line_words[g * MAXW + w]
        st.arc[d] = c
        st.depth = d + 1
        if rec(st, c + 1, results):
            st.depth = d
            return 1
        st.depth = d
        if free_count(st, cur, c + 1) < need:
            return 0
    return 0


def arc_search(join, line_points, n_points, arc, target, max_results):
    cdef cnp.ndarray[int32_t, ndim=1] jt = np.ascontiguousarray(np.asarray(join).ravel(), dtype=np.int32)
    cdef cnp.ndarray[int32_t, ndim=2] lp = np.ascontiguousarray(line_points, dtype=np.int32)
    cdef int n = n_points, n_lines = lp.shape[0], k = lp.shape[1]
    cdef int g, j, p, i, a, b, w
    if n > 64 * MAXW or target > MAXDEPTH:
        raise ValueError("plane too large for the compiled arc search")
    cdef cnp.ndarray[uint64_t, ndim=1] lw = np.zeros(n_lines * MAXW, dtype=np.uint64)
    for g in range(n_lines):
        for j in range(k):
            p = lp[g, j]
            lw[g * MAXW + (p >> 6)] |= (<uint64_t>1) << (p & 63)
    cdef ArcState st
    st.n = n
    st.W = (n + 63) // 64
    st.target = target
    st.max_results = max_results
    st.n_results = 0
    st.join = &jt[0]
    st.line_words = &lw[0]
    arc = [int(x) for x in arc]
    st.depth = len(arc)
    for w in range(MAXW):
        st.blocked[st.depth][w] = 0
    for i in range(st.depth):
        st.arc[i] = arc[i]
        st.blocked[st.depth][arc[i] >> 6] |= (<uint64_t>1) << (arc[i] & 63)
    for i in range(st.depth):
        for j in range(i + 1, st.depth):
            g = jt[arc[i] * n + arc[j]]
            for w in range(MAXW):
                st.blocked[st.depth][w] |= lw[g * MAXW + w]
    results = []
    rec(&st, 0, results)
    return results


cdef uint32_t cycle_mask_one(int *ea, int *eb, int n_edges, int nv) nogil:
    cdef int nb[MAXV][2]
    cdef int deg[MAXV]
    cdef char seen[MAXV]
    cdef int v, e, prev, cur, nxt, length
    cdef uint32_t mask = 0
    for v in range(nv):
        deg[v] = 0
        seen[v] = 0
    for e in range(n_edges):
        if deg[ea[e]] == 2 or deg[eb[e]] == 2:
            return OVERFLOW_BIT
        nb[ea[e]][deg[ea[e]]] = eb[e]
        deg[ea[e]] += 1
        nb[eb[e]][deg[eb[e]]] = ea[e]
        deg[eb[e]] += 1
    for v in range(nv):
        if deg[v] == 1 and not seen[v]:
            prev = -1
            cur = v
            while True:
                seen[cur] = 1
                if deg[cur] == 1 and cur != v:
                    break
                nxt = nb[cur][0] if nb[cur][0] != prev else (nb[cur][1] if deg[cur] == 2 else -1)
                if nxt < 0:
                    break
                prev = cur
                cur = nxt
    for v in range(nv):
        if deg[v] == 2 and not seen[v]:
            length = 0
            prev = -1
            cur = v
            while True:
                seen[cur] = 1
                length += 1
                nxt = nb[cur][1] if nb[cur][0] == prev else nb[cur][0]
                prev = cur
                cur = nxt
                if cur == v:
                    break
            mask |= (<uint32_t>1) << length
    return mask


def cycle_masks(tangents, sec_a, sec_b, n_vertices):
    cdef cnp.ndarray[int32_t, ndim=2] T = np.ascontiguousarray(tangents, dtype=np.int32)
    cdef cnp.ndarray[int32_t, ndim=2] A = np.ascontiguousarray(sec_a, dtype=np.int32)
    cdef cnp.ndarray[int32_t, ndim=2] B = np.ascontiguousarray(sec_b, dtype=np.int32)
    cdef int nt = T.shape[0], kt = T.shape[1], ns = A.shape[0]
    cdef int nv = n_vertices
    if nv > MAXV or kt > MAXV:
        raise ValueError("ovals too large for the compiled cycle search")
    cdef cnp.ndarray[uint32_t, ndim=2] out = np.zeros((nt, ns), dtype=np.uint32)
    cdef int t, s, j, g, n_edges
    cdef int ea[MAXV]
    cdef int eb[MAXV]
    with nogil:
        for t in range(nt):
            for s in range(ns):
                n_edges = 0
                for j in range(kt):
                    g = T[t, j]
                    if A[s, g] >= 0:
                        ea[n_edges] = A[s, g]
                        eb[n_edges] = B[s, g]
                        n_edges += 1
                if n_edges >= 3:
                    out[t, s] = cycle_mask_one(ea, eb, n_edges, nv)
    return out
