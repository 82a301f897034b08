# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Same contracts as ``_pykernels``; indices are 0-based."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef enum:
    NEG = -1073741824

ctypedef cnp.int32_t i32
ctypedef cnp.int64_t i64
ctypedef cnp.uint8_t u8
ctypedef cnp.int8_t i8


def fill_tables(const u8[::1] codes, bint literal=False):
    cdef Py_ssize_t n = codes.shape[0]
    V_a = np.full((n, n), NEG, dtype=np.int32)
    W_a = np.zeros((n, n), dtype=np.int32)
    WT_a = np.zeros((n, n), dtype=np.int32)
    vch_a = np.full((n, n), -2, dtype=np.int8)
    vk_a = np.full((n, n), -1, dtype=np.int32)
    wch_a = np.full((n, n), -1, dtype=np.int8)
    wk_a = np.full((n, n), -1, dtype=np.int32)
    cdef i32[:, ::1] V = V_a
    cdef i32[:, ::1] W = W_a
    cdef i32[:, ::1] WT = WT_a
    cdef i8[:, ::1] vch = vch_a
    cdef i32[:, ::1] vk = vk_a
    cdef i8[:, ::1] wch = wch_a
    cdef i32[:, ::1] wk = wk_a
    cdef Py_ssize_t i, j, k
    cdef i32 best, val, bk
    cdef i8 bc
    with nogil:
        for i in range(n - 1, -1, -1):
            for j in range(i, n):
                if j >= i + 2 and codes[i] + codes[j] == 3:
                    if j <= i + 3:
                        V[i, j] = 0
                        vch[i, j] = -1
                    else:
                        best = NEG
                        bc = -2
                        bk = -1
                        if codes[i + 1] + codes[j - 1] == 3:
                            best = V[i + 1, j - 1] + 1
                            bc = 0
                        for k in range(i + 1, j - 1):
                            val = W[i + 1, k] + WT[j - 1, k + 1]
                            if val > best:
                                best = val
                                bc = 1
                                bk = <i32>k
                        V[i, j] = best
                        vch[i, j] = bc
                        vk[i, j] = bk
                if j <= i + 3:
                    continue
                best = NEG
                bc = -1
                bk = -1
                if V[i, j] >= 0:
                    best = V[i, j]
                    bc = 0
                if not literal:
                    for k in range(i, j):
                        val = W[i, k] + WT[j, k + 1]
                        if val > best:
                            best = val
                            bc = 1
                            bk = <i32>k
                if W[i + 1, j] > best:
                    best = W[i + 1, j]
                    bc = 2
                if W[i, j - 1] > best:
                    best = W[i, j - 1]
                    bc = 3
                W[i, j] = best
                WT[j, i] = best
                wch[i, j] = bc
                wk[i, j] = bk
    return V_a, W_a, vch_a, vk_a, wch_a, wk_a


def window_codes(const u8[::1] codes, Py_ssize_t L):
    """Base-4 code of every window of L bases and of its conjugate (L <= 15)."""
    cdef Py_ssize_t n = codes.shape[0]
    cdef Py_ssize_t nw = n - L + 1 if n >= L else 0
    fw_a = np.empty(nw, dtype=np.int32)
    rc_a = np.empty(nw, dtype=np.int32)
    cdef i32[::1] fw = fw_a
    cdef i32[::1] rc = rc_a
    cdef Py_ssize_t x, t
    cdef i32 f = 0, r = 0
    cdef i32 mask = (1 << (2 * L)) - 1
    cdef i32 top = 2 * (L - 1)
    if nw == 0:
        return fw_a, rc_a
    with nogil:
        for t in range(L):
            f = (f << 2) | codes[t]
            r = (r >> 2) | ((3 - codes[t]) << top)
        fw[0] = f
        rc[0] = r
        for x in range(1, nw):
            f = ((f << 2) | codes[x + L - 1]) & mask
            r = (r >> 2) | ((3 - codes[x + L - 1]) << top)
            fw[x] = f
            rc[x] = r
    return fw_a, rc_a


def greedy_phase(const u8[::1] codes, u8[::1] marks, const i32[::1] fw,
                 const i32[::1] rc, Py_ssize_t nbuckets, Py_ssize_t k,
                 Py_ssize_t min_sep):
    """One leftmost sweep for windows of k+1 bases; selected runs as (p, q) arrays."""
    cdef Py_ssize_t n = codes.shape[0]
    cdef Py_ssize_t L = k + 1
    cdef Py_ssize_t nw = n - L + 1 if n >= L else 0
    starts_a = np.zeros(nbuckets + 1, dtype=np.int32)
    order_a = np.empty(nw, dtype=np.int32)
    head_a = np.empty(nbuckets, dtype=np.int32)
    cap = nw // (2 * L) + 1
    out_p_a = np.empty(cap, dtype=np.int32)
    out_q_a = np.empty(cap, dtype=np.int32)
    cdef i32[::1] starts = starts_a
    cdef i32[::1] order = order_a
    cdef i32[::1] head = head_a
    cdef i32[::1] out_p = out_p_a
    cdef i32[::1] out_q = out_q_a
    cdef Py_ssize_t x, t, c, p, r, bound, found = 0
    cdef bint ok
    with nogil:
        for x in range(nw):
            starts[fw[x] + 1] += 1
        for c in range(nbuckets):
            starts[c + 1] += starts[c]
            head[c] = starts[c]
        for x in range(nw):
            order[head[fw[x]]] = <i32>x
            head[fw[x]] += 1
        for c in range(nbuckets):
            head[c] = starts[c]

        p = 0
        while p < nw:
            ok = True
            for t in range(k, -1, -1):
                if marks[p + t]:
                    p += t + 1
                    ok = False
                    break
            if not ok:
                continue
            c = rc[p]
            if c < 0:
                p += 1
                continue
            bound = p + k + min_sep
            r = -1
            while head[c] < starts[c + 1]:
                x = order[head[c]]
                if x < bound:
                    head[c] += 1
                    continue
                ok = True
                for t in range(L):
                    if marks[x + t]:
                        ok = False
                        break
                if not ok:
                    head[c] += 1
                    continue
                r = x
                break
            if r < 0:
                p += 1
                continue
            for t in range(L):
                marks[p + t] = 1
                marks[r + t] = 1
            out_p[found] = <i32>p
            out_q[found] = <i32>(r + k)
            found += 1
            p += L
    return out_p_a[:found].copy(), out_q_a[:found].copy()
