# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel for the exact minimum ratio cut.

Enumerates connected vertex subsets S with |S| <= |V|/2 whose complement is
also connected (the realizer reduction), tracking min |boundary(S)|/|S|.
Bitmask graphs up to 63 vertices.  Semantics are identical to the pure
Python twin in _mincut_py.py.
"""

from libc.stdint cimport uint64_t, int64_t

import numpy as np

cimport numpy as cnp

cdef extern from *:
    """
    #if defined(_MSC_VER)
    #include <intrin.h>
    static inline int ef_popcount(unsigned long long x) { return (int)__popcnt64(x); }
    static inline int ef_ctz(unsigned long long x) { unsigned long i; _BitScanForward64(&i, x); return (int)i; }
    #else
    static inline int ef_popcount(unsigned long long x) { return __builtin_popcountll(x); }
    static inline int ef_ctz(unsigned long long x) { return __builtin_ctzll(x); }
    #endif
    """
    int ef_popcount(unsigned long long x) nogil
    int ef_ctz(unsigned long long x) nogil


cdef class _Searcher:
    cdef uint64_t adj[64]
    cdef int64_t mult[4096]
    cdef int64_t degw[64]
    cdef int nv, half
    cdef uint64_t full
    cdef int64_t best_s, best_k
    cdef uint64_t best_mask
    cdef unsigned long long visited

    cdef bint _mask_connected(self, uint64_t mask) nogil:
        cdef uint64_t comp, frontier, bit, new
        cdef int v
        if mask == 0:
            return True
        bit = mask & (~mask + 1)
        comp = bit
        frontier = bit
        while frontier:
            v = ef_ctz(frontier)
            frontier &= frontier - 1
            new = self.adj[v] & mask & ~comp
            comp |= new
            frontier |= new
        return comp == mask

    cdef bint _lex_less(self, uint64_t a, uint64_t b) nogil:
        # a precedes b iff a contains the lowest index where they differ
        cdef uint64_t d = a ^ b
        if d == 0:
            return False
        return (a & (d & (~d + 1))) != 0

    cdef void _consider(self, uint64_t S, int size, int64_t s) nogil:
        cdef bint better
        self.visited += 1
        # ratio s/size vs best_s/best_k by cross-multiplication
        if self.best_k == 0:
            better = True
        elif s * self.best_k != self.best_s * size:
            better = s * self.best_k < self.best_s * size
        elif size != self.best_k:
            better = size < self.best_k
        else:
            better = self._lex_less(S, self.best_mask)
        if not better:
            return
        if not self._mask_connected(self.full & ~S):
            return
        self.best_s = s
        self.best_k = size
        self.best_mask = S

    cdef void _rec(self, uint64_t S, uint64_t nbrs, uint64_t forbidden,
                   int size, int64_t s) nogil:
        cdef uint64_t cand, block, bit, inside
        cdef int v, u
        cdef int64_t s2
        self._consider(S, size, s)
        if size == self.half:
            return
        cand = nbrs & ~S & ~forbidden
        block = 0
        while cand:
            v = ef_ctz(cand)
            bit = (<uint64_t>1) << v
            cand &= cand - 1
            # boundary update: adding v flips its S-incident edges inward
            s2 = s + self.degw[v]
            inside = self.adj[v] & S
            while inside:
                u = ef_ctz(inside)
                inside &= inside - 1
                s2 -= 2 * self.mult[v * self.nv + u]
            self._rec(S | bit, nbrs | self.adj[v], forbidden | block,
                      size + 1, s2)
            block |= bit


def min_ratio_cut(adj_masks, mult_matrix, int nv, int half):
    """Exact min of boundary/|S| over doubly-connected S, |S| <= half.

    adj_masks: uint64 neighbor bitmasks (loops excluded).
    mult_matrix: nv*nv int64 non-loop edge multiplicities.
    Returns (s, k, mask, visited).
    """
    if nv < 1 or nv > 63:
        raise ValueError("kernel supports 1..63 vertices")
    cdef _Searcher st = _Searcher()
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] am = np.ascontiguousarray(
        adj_masks, dtype=np.uint64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] mm = np.ascontiguousarray(
        mult_matrix, dtype=np.int64)
    cdef int i, j
    st.nv = nv
    st.half = half
    st.full = ((<uint64_t>1) << nv) - 1
    st.best_s = 0
    st.best_k = 0
    st.best_mask = 0
    st.visited = 0
    for i in range(nv):
        st.adj[i] = am[i]
        st.degw[i] = 0
        for j in range(nv):
            st.mult[i * nv + j] = mm[i, j]
            st.degw[i] += mm[i, j]
    cdef uint64_t below
    cdef int r
    with nogil:
        for r in range(nv):
            below = ((<uint64_t>1) << r) - 1
            st._rec((<uint64_t>1) << r, st.adj[r], below, 1, st.degw[r])
    return int(st.best_s), int(st.best_k), int(st.best_mask), int(st.visited)
