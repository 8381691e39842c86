# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the inner loops in ``_pykernels``.

Same signatures, same outputs (including order).
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport malloc, calloc, free

from isotonian import _pykernels

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_ctzll(unsigned long long x) nogil


def hom_table(int n_p, lower, up_masks, int n_q):
    if n_q > 64:
        return _pykernels.hom_table(n_p, lower, up_masks, n_q)
    if n_p == 0:
        return [()]
    cdef u64 full = (<u64>-1) if n_q == 64 else ((<u64>1 << n_q) - 1)
    cdef u64 *ups = <u64 *>malloc(n_q * sizeof(u64))
    cdef u64 *rem = <u64 *>malloc(n_p * sizeof(u64))
    cdef int *cur = <int *>malloc(n_p * sizeof(int))
    cdef int *off = <int *>malloc((n_p + 1) * sizeof(int))
    cdef int total = 0
    cdef int k, l, q
    for k in range(n_p):
        total += len(lower[k])
    cdef int *low = <int *>malloc((total + 1) * sizeof(int))
    out = []
    try:
        for q in range(n_q):
            ups[q] = <u64>up_masks[q]
        total = 0
        for k in range(n_p):
            off[k] = total
            for l in lower[k]:
                low[total] = l
                total += 1
        off[n_p] = total

        k = 0
        rem[0] = full
        while k >= 0:
            if rem[k] == 0:
                k -= 1
                continue
            q = __builtin_ctzll(rem[k])
            rem[k] &= rem[k] - 1
            cur[k] = q
            if k == n_p - 1:
                out.append(tuple([cur[l] for l in range(n_p)]))
                continue
            k += 1
            rem[k] = full
            for l in range(off[k], off[k + 1]):
                rem[k] &= ups[cur[low[l]]]
        return out
    finally:
        free(ups); free(rem); free(cur); free(off); free(low)


cdef int *_flat_hom(hom, int n_maps, int n_p) except NULL:
    cdef int *h = <int *>malloc((n_maps * n_p + 1) * sizeof(int))
    cdef int m, k
    for m in range(n_maps):
        row = hom[m]
        for k in range(n_p):
            h[m * n_p + k] = row[k]
    return h


def fiber_members(hom, int n_q, counts, int d):
    if d == 0:
        return [()]
    cdef int n_maps = len(hom)
    if n_maps == 0:
        return []
    cdef int n_p = len(hom[0])
    cdef int *h = _flat_hom(hom, n_maps, n_p)
    cdef int *cnt = <int *>malloc((n_p * n_q + 1) * sizeof(int))
    cdef int *chosen = <int *>malloc(d * sizeof(int))
    cdef int *nxt = <int *>malloc((d + 1) * sizeof(int))
    cdef int t, m, k, found, i
    cdef int *row
    out = []
    try:
        for i in range(n_p * n_q):
            cnt[i] = counts[i]
        t = 0
        nxt[0] = 0
        while t >= 0:
            if t == d:
                out.append(tuple([chosen[i] for i in range(d)]))
                t -= 1
                row = h + chosen[t] * n_p
                for k in range(n_p):
                    cnt[k * n_q + row[k]] += 1
                nxt[t] = chosen[t] + 1
                continue
            found = -1
            m = nxt[t]
            while m < n_maps:
                row = h + m * n_p
                for k in range(n_p):
                    if cnt[k * n_q + row[k]] == 0:
                        break
                else:
                    found = m
                    break
                m += 1
            if found < 0:
                t -= 1
                if t >= 0:
                    row = h + chosen[t] * n_p
                    for k in range(n_p):
                        cnt[k * n_q + row[k]] += 1
                    nxt[t] = chosen[t] + 1
                continue
            row = h + found * n_p
            for k in range(n_p):
                cnt[k * n_q + row[k]] -= 1
            chosen[t] = found
            nxt[t + 1] = found
            t += 1
        return out
    finally:
        free(h); free(cnt); free(chosen); free(nxt)


cdef tuple _key_from_counts(unsigned char *cnt, int n_p, int n_q):
    parts = []
    cdef int k, q, c
    for k in range(n_p):
        vals = []
        for q in range(n_q):
            for c in range(cnt[k * n_q + q]):
                vals.append(q)
        parts.append(tuple(vals))
    return tuple(parts)


def group_fibers(hom, int n_q, int d, long max_fibers):
    cdef int n_maps = len(hom)
    if n_maps == 0:
        return {}
    cdef int n_p = len(hom[0])
    if d > 255 or d == 0:
        return _pykernels.group_fibers(hom, n_q, d, max_fibers)
    cdef int width = n_p * n_q
    cdef int *h = _flat_hom(hom, n_maps, n_p)
    cdef unsigned char *cnt = <unsigned char *>calloc(width + 1, 1)
    cdef int *chosen = <int *>malloc(d * sizeof(int))
    cdef int t, k, i, new
    cdef int *row
    raw = {}
    try:
        # odometer over nondecreasing index tuples
        for i in range(d):
            chosen[i] = 0
        for k in range(n_p):
            cnt[k * n_q + h[k]] += d
        while True:
            key = PyBytes_FromStringAndSize(<char *>cnt, width)
            bucket = raw.get(key)
            if bucket is None:
                if len(raw) >= max_fibers:
                    return None
                raw[key] = [tuple([chosen[i] for i in range(d)])]
            else:
                bucket.append(tuple([chosen[i] for i in range(d)]))
            t = d - 1
            while t >= 0 and chosen[t] == n_maps - 1:
                t -= 1
            if t < 0:
                break
            new = chosen[t] + 1
            for i in range(t, d):
                row = h + chosen[i] * n_p
                for k in range(n_p):
                    cnt[k * n_q + row[k]] -= 1
                chosen[i] = new
                row = h + new * n_p
                for k in range(n_p):
                    cnt[k * n_q + row[k]] += 1
        out = {}
        for key, bucket in raw.items():
            out[_key_from_counts(<unsigned char *><char *>key, n_p, n_q)] = bucket
        return out
    finally:
        free(h); free(cnt); free(chosen)


cdef int _find(int *parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef int _pair(int *a, int *b, int d, int *sq) nogil:
    # multiset intersection size of two sorted rows; sq flags whether both
    # remainders are free of repeats
    cdef int i = 0, j = 0, common = 0
    cdef int last_a = -1, last_b = -1
    sq[0] = 1
    while i < d and j < d:
        if a[i] == b[j]:
            common += 1
            i += 1
            j += 1
        elif a[i] < b[j]:
            if a[i] == last_a:
                sq[0] = 0
            last_a = a[i]
            i += 1
        else:
            if b[j] == last_b:
                sq[0] = 0
            last_b = b[j]
            j += 1
    while i < d:
        if a[i] == last_a:
            sq[0] = 0
        last_a = a[i]
        i += 1
    while j < d:
        if b[j] == last_b:
            sq[0] = 0
        last_b = b[j]
        j += 1
    return common


def fiber_profile(members, int d):
    cdef int n = len(members)
    if n <= 1:
        return 0, True
    cdef int *rows = <int *>malloc((n * d + 1) * sizeof(int))
    cdef int *parent = <int *>malloc(n * sizeof(int))
    cdef int *sq_parent = <int *>malloc(n * sizeof(int))
    cdef int i, j, w, ri, rj, common, sq, groups, sq_groups, bottleneck
    try:
        for i in range(n):
            mono = members[i]
            for j in range(d):
                rows[i * d + j] = mono[j]
            parent[i] = i
            sq_parent[i] = i
        with nogil:
            sq_groups = n
            groups = n
            bottleneck = 0
            w = 0
            while w <= d and groups > 1:
                for i in range(n):
                    for j in range(i + 1, n):
                        common = _pair(rows + i * d, rows + j * d, d, &sq)
                        if w == 0 and sq:
                            ri = _find(sq_parent, i)
                            rj = _find(sq_parent, j)
                            if ri != rj:
                                sq_parent[ri] = rj
                                sq_groups -= 1
                        if d - common == w:
                            ri = _find(parent, i)
                            rj = _find(parent, j)
                            if ri != rj:
                                parent[ri] = rj
                                groups -= 1
                                bottleneck = w
                w += 1
        return bottleneck, sq_groups == 1
    finally:
        free(rows); free(parent); free(sq_parent)
