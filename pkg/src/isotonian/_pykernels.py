"""Pure-Python versions of the inner loops.

Every function here has a twin with the same signature and results in the
compiled ``_ckernels`` extension; ``isotonian.kernels`` picks one at import.

Conventions shared by both backends:

* a map is a tuple of target indices, one per source position;
* a monomial is a nondecreasing tuple of map indices;
* a multidegree key is a tuple, one entry per source position, of the sorted
  target indices hit at that position.
"""

from itertools import combinations_with_replacement


def hom_table(n_p, lower, up_masks, n_q):
    """All isotone maps, positions taken along a linear extension.

    ``lower[k]`` lists the earlier positions that are lower covers of
    position ``k``; ``up_masks[q]`` is the up-set bitmask of ``q``.  Output is
    in lexicographic order.
    """
    full = (1 << n_q) - 1
    out = []
    cur = [0] * n_p

    def rec(k):
        if k == n_p:
            out.append(tuple(cur))
            return
        allowed = full
        for l in lower[k]:
            allowed &= up_masks[cur[l]]
        while allowed:
            low = allowed & -allowed
            cur[k] = low.bit_length() - 1
            rec(k + 1)
            allowed ^= low

    rec(0)
    return out


def multidegree_key(hom, mono):
    if not mono:
        return ()
    n_p = len(hom[mono[0]])
    return tuple(tuple(sorted(hom[m][k] for m in mono)) for k in range(n_p))


def fiber_members(hom, n_q, counts, d):
    """Monomials of degree ``d`` whose multidegree matches ``counts``.

    ``counts`` is flat with entry ``k * n_q + q`` = multiplicity of target
    ``q`` at source position ``k``; it is not modified.
    """
    counts = list(counts)
    n_maps = len(hom)
    out = []
    if d == 0:
        return [()]
    n_p = len(hom[0]) if n_maps else 0
    chosen = [0] * d
    offsets = [k * n_q for k in range(n_p)]

    def rec(t, start):
        if t == d:
            out.append(tuple(chosen))
            return
        for m in range(start, n_maps):
            row = hom[m]
            ok = True
            for k in range(n_p):
                if counts[offsets[k] + row[k]] == 0:
                    ok = False
                    break
            if not ok:
                continue
            for k in range(n_p):
                counts[offsets[k] + row[k]] -= 1
            chosen[t] = m
            rec(t + 1, m)
            for k in range(n_p):
                counts[offsets[k] + row[k]] += 1

    rec(0, 0)
    return out


def group_fibers(hom, n_q, d, max_fibers):
    """Partition all degree-``d`` monomials by multidegree key.

    Returns ``None`` when more than ``max_fibers`` distinct keys appear.
    """
    groups = {}
    n_maps = len(hom)
    if n_maps == 0:
        return groups
    n_p = len(hom[0])
    for mono in combinations_with_replacement(range(n_maps), d):
        key = tuple(tuple(sorted(hom[m][k] for m in mono)) for k in range(n_p))
        bucket = groups.get(key)
        if bucket is None:
            if len(groups) >= max_fibers:
                return None
            groups[key] = [mono]
        else:
            bucket.append(mono)
    return groups


def _common_and_squarefree(a, b):
    """Size of the multiset intersection of sorted tuples ``a`` and ``b``, and
    whether both remainders are free of repeated entries."""
    i = j = common = 0
    ra, rb = [], []
    na, nb = len(a), len(b)
    while i < na and j < nb:
        if a[i] == b[j]:
            common += 1
            i += 1
            j += 1
        elif a[i] < b[j]:
            ra.append(a[i])
            i += 1
        else:
            rb.append(b[j])
            j += 1
    ra.extend(a[i:])
    rb.extend(b[j:])
    sq = all(ra[k] != ra[k + 1] for k in range(len(ra) - 1)) and \
        all(rb[k] != rb[k + 1] for k in range(len(rb) - 1))
    return common, sq


def fiber_profile(members, d):
    """``(bottleneck, squarefree_connected)`` for one fiber.

    The bottleneck is the least ``k`` such that the members are connected
    by moves of degree at most ``k``; two members are joined by a move of
    degree ``d - |gcd|``.
    """
    n = len(members)
    if n <= 1:
        return 0, True
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_weight = [[] for _ in range(d + 1)]
    sq_parent = list(range(n))

    def sq_find(x):
        while sq_parent[x] != x:
            sq_parent[x] = sq_parent[sq_parent[x]]
            x = sq_parent[x]
        return x

    sq_groups = n
    for i in range(n):
        a = members[i]
        for j in range(i + 1, n):
            common, sq = _common_and_squarefree(a, members[j])
            by_weight[d - common].append((i, j))
            if sq:
                ri, rj = sq_find(i), sq_find(j)
                if ri != rj:
                    sq_parent[ri] = rj
                    sq_groups -= 1

    groups = n
    bottleneck = 0
    for w in range(d + 1):
        for i, j in by_weight[w]:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
                groups -= 1
                bottleneck = w
        if groups == 1:
            break
    return bottleneck, sq_groups == 1
