"""Exhaustive generation of finite posets up to isomorphism."""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product

from isotonian.poset import Poset


def _closure_pairs(P: Poset) -> frozenset:
    return frozenset((a, b) for a in range(len(P)) for b in range(len(P))
                     if a != b and P.leq_index(a, b))


def _blocks(n: int, pairs) -> list:
    down = [0] * n
    up = [0] * n
    for a, b in pairs:
        up[a] += 1
        down[b] += 1
    inv = [(down[x], up[x]) for x in range(n)]
    below = [[] for _ in range(n)]
    above = [[] for _ in range(n)]
    for a, b in pairs:
        below[b].append(inv[a])
        above[a].append(inv[b])
    inv2 = [(inv[x], tuple(sorted(below[x])), tuple(sorted(above[x]))) for x in range(n)]
    groups = {}
    for x in range(n):
        groups.setdefault(inv2[x], []).append(x)
    return [groups[k] for k in sorted(groups)]


def canonical_code(n: int, pairs) -> tuple:
    """Isomorphism invariant code of the strict order ``pairs`` on range(n).

    Elements are first ordered by degree-type invariants; the code is the
    least sorted pair list over relabelings that respect that ordering.
    """
    blocks = _blocks(n, pairs)
    best = None
    for choice in product(*(permutations(b) for b in blocks)):
        order = [x for block in choice for x in block]
        pos = {x: i for i, x in enumerate(order)}
        code = tuple(sorted((pos[a], pos[b]) for a, b in pairs))
        if best is None or code < best:
            best = code
    return (n, best)


def _from_code(code, prefix: str) -> Poset:
    n, pairs = code
    labels = [f"{prefix}{i}" for i in range(n)]
    return Poset(labels, [(labels[a], labels[b]) for a, b in pairs])


def _down_closed_subsets(n: int, pairs):
    below = [0] * n
    for a, b in pairs:
        below[b] |= 1 << a
    for mask in range(1 << n):
        if all(below[x] & ~mask == 0 for x in range(n) if (mask >> x) & 1):
            yield mask


@lru_cache(maxsize=None)
def _codes(n: int) -> tuple:
    if n == 0:
        return ((0, ()),)
    found = set()
    for n0, pairs in _codes(n - 1):
        for mask in _down_closed_subsets(n0, pairs):
            new = list(pairs) + [(a, n0) for a in range(n0) if (mask >> a) & 1]
            found.add(canonical_code(n, new))
    return tuple(sorted(found))


def all_posets(n: int, prefix: str = "q") -> list:
    """One representative per isomorphism type of n-element posets."""
    return [_from_code(code, prefix) for code in _codes(n)]


def posets_up_to(n: int, prefix: str = "q") -> list:
    out = []
    for k in range(1, n + 1):
        out.extend(all_posets(k, prefix))
    return out


def poset_code(P: Poset) -> tuple:
    return canonical_code(len(P), _closure_pairs(P))
