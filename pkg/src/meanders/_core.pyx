# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

Same contract and same algorithm as ``_core_py`` (see that module for the
pruning logic); this version keeps the whole search in C arrays so the
r = 6 table (all irreducible pairs up to n = 12) stays in the minutes
range.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

BACKEND_NAME = "cython"

DEF MAXN = 24


cdef struct St:
    int n
    int alen
    int[MAXN] ablock
    int[MAXN] kblock
    int[MAXN] aperm
    int[MAXN] bperm
    int[MAXN] binv
    int[MAXN + 1] blk
    int[MAXN + 1] gapface
    int[2 * MAXN + 2] seg_lo
    int[2 * MAXN + 2] seg_hi
    int[2 * MAXN + 2] seg_fid
    unsigned int[MAXN + 2] face_mask
    long[MAXN] stamp
    int seg_top
    int blk_top
    int face_top
    int bblocks
    long stamp_ctr
    long long* acc


cdef void _leaf(St* s) noexcept nogil:
    cdef int i, j, cycles, n = s.n
    s.stamp_ctr += 1
    cycles = 0
    for i in range(n):
        if s.stamp[i] != s.stamp_ctr:
            cycles += 1
            j = i
            while s.stamp[j] != s.stamp_ctr:
                s.stamp[j] = s.stamp_ctr
                j = s.aperm[s.binv[j]]
    s.acc[((n - cycles) * (n + 1) + s.alen) * (n + 1) + (n - s.bblocks)] += 1


cdef void _rec_stack(St* s) noexcept nogil:
    cdef int lo, hi, fid
    if s.seg_top == 0:
        _leaf(s)
        return
    s.seg_top -= 1
    lo = s.seg_lo[s.seg_top]
    hi = s.seg_hi[s.seg_top]
    fid = s.seg_fid[s.seg_top]
    s.blk[s.blk_top] = lo
    s.blk_top += 1
    _rec_block(s, lo, hi, fid, 1, 1u << s.ablock[lo])
    s.blk_top -= 1
    # deeper pushes reuse this slot; restore contents, not just the top
    s.seg_lo[s.seg_top] = lo
    s.seg_hi[s.seg_top] = hi
    s.seg_fid[s.seg_top] = fid
    s.seg_top += 1


cdef void _rec_block(St* s, int lo, int hi, int fid, int m,
                     unsigned int mask) noexcept nogil:
    cdef int top = s.blk_top
    cdef int p = s.blk[top - 1]
    cdef unsigned int kb = 1u << s.kblock[p]
    cdef unsigned int ab
    cdef int base, first, prev, j, c, gl, gh, pushed, g
    if not (s.face_mask[fid] & kb):
        s.face_mask[fid] |= kb
        base = top - m
        first = s.blk[base]
        prev = first
        for j in range(base + 1, top):
            c = s.blk[j]
            s.bperm[prev] = c
            s.binv[c] = prev
            prev = c
        s.bperm[p] = first
        s.binv[first] = p
        s.bblocks += 1
        pushed = 0
        if p < hi:
            s.seg_lo[s.seg_top] = p + 1
            s.seg_hi[s.seg_top] = hi
            s.seg_fid[s.seg_top] = fid
            s.seg_top += 1
            pushed += 1
        for j in range(top - 2, base - 1, -1):
            gl = s.blk[j] + 1
            gh = s.blk[j + 1] - 1
            if gl <= gh:
                s.seg_lo[s.seg_top] = gl
                s.seg_hi[s.seg_top] = gh
                s.seg_fid[s.seg_top] = s.gapface[j + 1]
                s.seg_top += 1
                pushed += 1
        _rec_stack(s)
        s.seg_top -= pushed
        s.bblocks -= 1
        s.face_mask[fid] &= ~kb
    cdef int last = s.blk[top - 1]
    for c in range(last + 1, hi + 1):
        ab = 1u << s.ablock[c]
        if mask & ab:
            continue
        g = s.face_top
        s.face_mask[g] = 1u << s.kblock[last]
        s.gapface[top] = g
        s.face_top = g + 1
        s.blk[top] = c
        s.blk_top = top + 1
        _rec_block(s, lo, hi, fid, m + 1, mask | ab)
        s.blk_top = top
        s.face_top = g


def count_for_alpha(int n, ablock, kblock, aperm, int alen, acc):
    """Tally (r, alen, b) over all beta forming an irreducible pair with
    the partition described by (ablock, kblock, aperm); 0-based arrays.
    acc is a flat writable int64 buffer of size (n+1)**3."""
    cdef long long[::1] view = acc
    cdef St st
    cdef int i
    if n < 1 or n > MAXN:
        raise ValueError(f"n out of kernel range 1..{MAXN}")
    if view.shape[0] < (n + 1) ** 3:
        raise ValueError("accumulator too small")
    st.n = n
    st.alen = alen
    for i in range(n):
        st.ablock[i] = ablock[i]
        st.kblock[i] = kblock[i]
        st.aperm[i] = aperm[i]
    memset(st.stamp, 0, sizeof(st.stamp))
    st.stamp_ctr = 0
    st.seg_lo[0] = 0
    st.seg_hi[0] = n - 1
    st.seg_fid[0] = 0
    st.seg_top = 1
    st.blk_top = 0
    st.face_mask[0] = 0
    st.face_top = 1
    st.bblocks = 0
    st.acc = &view[0]
    with nogil:
        _rec_stack(&st)


def loop_table(int n, perms):
    """Loop-count tally over all ordered pairs of the given permutations
    (0-based one-line words).  Returns counts indexed by loop count k."""
    cdef Py_ssize_t m = len(perms)
    cdef int* words = <int*> malloc(m * n * sizeof(int))
    cdef int* invs = <int*> malloc(m * n * sizeof(int))
    cdef long long* counts = <long long*> malloc((n + 1) * sizeof(long long))
    cdef long* stamp = <long*> malloc(n * sizeof(long))
    cdef Py_ssize_t i, j
    cdef int k, s, t, cycles
    cdef long ctr = 0
    cdef int* pw
    cdef int* qinv
    if words == NULL or invs == NULL or counts == NULL or stamp == NULL:
        free(words); free(invs); free(counts); free(stamp)
        raise MemoryError()
    try:
        for i in range(m):
            w = perms[i]
            for k in range(n):
                words[i * n + k] = w[k]
            for k in range(n):
                invs[i * n + words[i * n + k]] = k
        for k in range(n + 1):
            counts[k] = 0
        for k in range(n):
            stamp[k] = 0
        with nogil:
            for i in range(m):
                pw = words + i * n
                for j in range(i, m):
                    qinv = invs + j * n
                    ctr += 1
                    cycles = 0
                    for s in range(n):
                        if stamp[s] != ctr:
                            cycles += 1
                            t = s
                            while stamp[t] != ctr:
                                stamp[t] = ctr
                                t = pw[qinv[t]]
                    counts[cycles] += 1 if i == j else 2
        return [counts[k] for k in range(n + 1)]
    finally:
        free(words)
        free(invs)
        free(counts)
        free(stamp)
