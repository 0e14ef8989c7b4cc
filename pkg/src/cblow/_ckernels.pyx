# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; see ``_pykernels`` for the contracts."""
import numpy as np


def transitive_closure(adj):
    cdef unsigned char[:, ::1] r = np.array(adj, dtype=np.uint8, order="C", copy=True)
    cdef Py_ssize_t n = r.shape[0]
    cdef Py_ssize_t i, j, k
    for i in range(n):
        r[i, i] = 1
    for k in range(n):
        for i in range(n):
            if r[i, k]:
                for j in range(n):
                    if r[k, j]:
                        r[i, j] = 1
    return np.asarray(r)


def meet_join_tables(leq_in):
    cdef const unsigned char[:, ::1] leq = np.ascontiguousarray(leq_in, dtype=np.uint8)
    cdef Py_ssize_t n = leq.shape[0]
    meet_arr = np.full((n, n), -1, dtype=np.int32)
    join_arr = np.full((n, n), -1, dtype=np.int32)
    cdef int[:, ::1] meet = meet_arr
    cdef int[:, ::1] join = join_arr
    cdef int[::1] downsize = np.zeros(n, dtype=np.int32)
    cdef int[::1] upsize = np.zeros(n, dtype=np.int32)
    cdef Py_ssize_t x, y, z
    cdef int cnt, best, bestsize
    for x in range(n):
        for y in range(n):
            if leq[x, y]:
                downsize[y] += 1
                upsize[x] += 1
    for x in range(n):
        for y in range(x, n):
            cnt = 0
            best = -1
            bestsize = -1
            for z in range(n):
                if leq[z, x] and leq[z, y]:
                    cnt += 1
                    if downsize[z] > bestsize:
                        bestsize = downsize[z]
                        best = z
            if cnt > 0 and bestsize == cnt:
                meet[x, y] = best
                meet[y, x] = best
            cnt = 0
            best = -1
            bestsize = -1
            for z in range(n):
                if leq[x, z] and leq[y, z]:
                    cnt += 1
                    if upsize[z] > bestsize:
                        bestsize = upsize[z]
                        best = z
            if cnt > 0 and bestsize == cnt:
                join[x, y] = best
                join[y, x] = best
    return meet_arr, join_arr


def join_map_is_iso(meet_in, join_in, factors, tops, Py_ssize_t target_size):
    cdef const int[:, ::1] meet = np.ascontiguousarray(meet_in, dtype=np.int32)
    cdef const int[:, ::1] join = np.ascontiguousarray(join_in, dtype=np.int32)
    cdef Py_ssize_t k = len(factors)
    cdef Py_ssize_t size = 1
    cdef Py_ssize_t j, total, pos
    for f in factors:
        size *= len(f)
    if size != target_size:
        return False
    if k == 0:
        return True
    total = 0
    for f in factors:
        total += len(f)
    cdef int[::1] flat = np.zeros(total, dtype=np.int32)
    cdef int[::1] start = np.zeros(k, dtype=np.int32)
    cdef int[::1] length = np.zeros(k, dtype=np.int32)
    cdef const int[::1] top = np.ascontiguousarray(tops, dtype=np.int32)
    cdef int[::1] idx = np.zeros(k, dtype=np.int32)
    pos = 0
    for j in range(k):
        start[j] = pos
        length[j] = len(factors[j])
        for v in factors[j]:
            flat[pos] = v
            pos += 1
    cdef int w
    while True:
        w = flat[start[0] + idx[0]]
        for j in range(1, k):
            w = join[w, flat[start[j] + idx[j]]]
            if w < 0:
                return False
        for j in range(k):
            if meet[w, top[j]] != flat[start[j] + idx[j]]:
                return False
        j = k - 1
        while j >= 0:
            idx[j] += 1
            if idx[j] < length[j]:
                break
            idx[j] = 0
            j -= 1
        if j < 0:
            return True


def find_isomorphism(leq_a_in, leq_b_in, order_in, cand_in):
    cdef const unsigned char[:, ::1] a = np.ascontiguousarray(leq_a_in, dtype=np.uint8)
    cdef const unsigned char[:, ::1] b = np.ascontiguousarray(leq_b_in, dtype=np.uint8)
    cdef const unsigned char[:, ::1] cand = np.ascontiguousarray(cand_in, dtype=np.uint8)
    cdef Py_ssize_t n = a.shape[0]
    if n != b.shape[0]:
        return None
    cdef const int[::1] order = np.ascontiguousarray(order_in, dtype=np.int32)
    mapping_arr = np.full(n, -1, dtype=np.int32)
    cdef int[::1] mapping = mapping_arr
    cdef unsigned char[::1] used = np.zeros(n, dtype=np.uint8)
    cdef int[::1] nxt = np.zeros(n + 1, dtype=np.int32)
    cdef Py_ssize_t pos = 0
    cdef Py_ssize_t s
    cdef int p, q, p2, q2
    cdef bint ok, placed
    if n == 0:
        return mapping_arr
    while pos >= 0:
        if pos == n:
            return mapping_arr
        p = order[pos]
        placed = False
        q = nxt[pos]
        while q < n:
            if used[q] or not cand[p, q]:
                q += 1
                continue
            ok = True
            for s in range(pos):
                p2 = order[s]
                q2 = mapping[p2]
                if a[p, p2] != b[q, q2] or a[p2, p] != b[q2, q]:
                    ok = False
                    break
            if ok:
                mapping[p] = q
                used[q] = 1
                nxt[pos] = q + 1
                pos += 1
                nxt[pos] = 0
                placed = True
                break
            q += 1
        if not placed:
            nxt[pos] = 0
            pos -= 1
            if pos >= 0:
                p = order[pos]
                used[mapping[p]] = 0
                mapping[p] = -1
    return None
