"""Pure-Python inner loops, used when the compiled extension is unavailable.

Indices are 0-based; codes are A=0, C=1, G=2, U=3 so complements sum to 3.
The DP vectorises the inner split maximisation with numpy; ``argmax`` returns
the first maximum, which is the smallest split point, matching the compiled
kernel's tie rule.
"""
import numpy as np

NEG = -1073741824


def fill_tables(codes, literal=False):
    n = len(codes)
    c = [int(x) for x in codes]
    V = np.full((n, n), NEG, dtype=np.int32)
    W = np.zeros((n, n), dtype=np.int32)
    WT = np.zeros((n, n), dtype=np.int32)
    vch = np.full((n, n), -2, dtype=np.int8)
    vk = np.full((n, n), -1, dtype=np.int32)
    wch = np.full((n, n), -1, dtype=np.int8)
    wk = np.full((n, n), -1, dtype=np.int32)
    for i in range(n - 1, -1, -1):
        Wi = W[i]
        Wi1 = W[i + 1] if i + 1 < n else None
        for j in range(i, n):
            if j >= i + 2 and c[i] + c[j] == 3:
                if j <= i + 3:
                    V[i, j] = 0
                    vch[i, j] = -1
                else:
                    best, bc, bk = NEG, -2, -1
                    if c[i + 1] + c[j - 1] == 3:
                        best, bc = int(V[i + 1, j - 1]) + 1, 0
                    split = Wi1[i + 1:j - 1] + WT[j - 1, i + 2:j]
                    if split.size:
                        a = int(split.argmax())
                        if split[a] > best:
                            best, bc, bk = int(split[a]), 1, i + 1 + a
                    V[i, j] = best
                    vch[i, j] = bc
                    vk[i, j] = bk
            if j <= i + 3:
                continue
            best, bc, bk = int(V[i, j]), 0, -1
            if best < 0:
                best, bc = NEG, -1
            if not literal:
                split = Wi[i:j] + WT[j, i + 1:j + 1]
                a = int(split.argmax())
                if split[a] > best:
                    best, bc, bk = int(split[a]), 1, i + a
            if Wi1[j] > best:
                best, bc = int(Wi1[j]), 2
            if Wi[j - 1] > best:
                best, bc = int(Wi[j - 1]), 3
            Wi[j] = best
            WT[j, i] = best
            wch[i, j] = bc
            wk[i, j] = bk
    return V, W, vch, vk, wch, wk


def window_codes(codes, L):
    n = len(codes)
    nw = n - L + 1
    if nw <= 0:
        return np.zeros(0, np.int32), np.zeros(0, np.int32)
    c = codes.astype(np.int64)
    fw = np.zeros(nw, np.int64)
    rc = np.zeros(nw, np.int64)
    for t in range(L):
        fw = fw * 4 + c[t:t + nw]
        rc = rc * 4 + (3 - c[L - 1 - t:L - 1 - t + nw])
    return fw.astype(np.int32), rc.astype(np.int32)


def greedy_phase(codes, marks, fw, rc, nbuckets, k, min_sep):
    n = len(codes)
    L = k + 1
    nw = n - L + 1 if n >= L else 0
    fw = fw.tolist()
    rc = rc.tolist()
    buckets = [[] for _ in range(nbuckets)]
    for x in range(nw):
        buckets[fw[x]].append(x)
    head = [0] * nbuckets
    m = bytearray(marks.tobytes())
    ones = b"\x01" * L
    out_p, out_q = [], []
    p = 0
    while p < nw:
        blocked = -1
        for t in range(k, -1, -1):
            if m[p + t]:
                blocked = t
                break
        if blocked >= 0:
            p += blocked + 1
            continue
        cc = rc[p]
        if cc < 0:
            p += 1
            continue
        bound = p + k + min_sep
        lst = buckets[cc]
        h = head[cc]
        r = -1
        while h < len(lst):
            x = lst[h]
            if x < bound or 1 in m[x:x + L]:
                h += 1
                continue
            r = x
            break
        head[cc] = h
        if r < 0:
            p += 1
            continue
        m[p:p + L] = ones
        m[r:r + L] = ones
        out_p.append(p)
        out_q.append(r + k)
        p += L
    marks[:] = np.frombuffer(bytes(m), dtype=np.uint8)
    return np.array(out_p, dtype=np.int32), np.array(out_q, dtype=np.int32)
