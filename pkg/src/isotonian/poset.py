"""Finite posets given by their Hasse diagram.

Elements are opaque string labels.  Every deterministic ordering in the
package is lexicographic on labels, so ``Poset.elements`` is kept sorted and
element indices refer to that order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable


class PosetError(ValueError):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """Immutable finite poset.

    The order is stored as bitmasks: bit ``j`` of ``up_mask(i)`` is set iff
    ``elements[i] <= elements[j]``.
    """

    __slots__ = (
        "name", "elements", "index", "covers", "redundant_covers",
        "_up", "_down", "_lower", "_upper", "_linext", "_hash", "_dual",
    )

    def __init__(self, elements: Iterable[str], covers: Iterable[tuple[str, str]] = (), name: str | None = None):
        labels = [str(e) for e in elements]
        seen = set()
        for e in labels:
            if e in seen:
                raise PosetError(f"duplicate element label {e!r}")
            seen.add(e)
        self.name = name
        self.elements = tuple(sorted(labels))
        self.index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)

        edges = set()
        for a, b in covers:
            if a not in self.index:
                raise PosetError(f"unknown element {a!r} in cover {a}<{b}")
            if b not in self.index:
                raise PosetError(f"unknown element {b!r} in cover {a}<{b}")
            if a == b:
                raise PosetError(f"cycle among covers: {a}<{a}")
            edges.add((self.index[a], self.index[b]))

        succ = [[] for _ in range(n)]
        indeg = [0] * n
        for i, j in edges:
            succ[i].append(j)
            indeg[j] += 1

        # lexicographically least topological order (Kahn with a heap)
        heap = [i for i in range(n) if indeg[i] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            i = heapq.heappop(heap)
            order.append(i)
            for j in succ[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    heapq.heappush(heap, j)
        if len(order) != n:
            stuck = sorted(self.elements[i] for i in range(n) if indeg[i] > 0)
            raise PosetError("cycle among covers involving " + " ".join(stuck))

        up = [1 << i for i in range(n)]
        for i in reversed(order):
            for j in succ[i]:
                up[i] |= up[j]

        kept, dropped = [], []
        for i, j in sorted(edges):
            if any(k != j and (up[k] >> j) & 1 for k in succ[i]):
                dropped.append((self.elements[i], self.elements[j]))
            else:
                kept.append((i, j))

        down = [0] * n
        for i in range(n):
            for j in _bits(up[i]):
                down[j] |= 1 << i

        self._up = tuple(up)
        self._down = tuple(down)
        self._lower = tuple(tuple(sorted(i for i, j in kept if j == k)) for k in range(n))
        self._upper = tuple(tuple(sorted(j for i, j in kept if i == k)) for k in range(n))
        self._linext = tuple(order)
        self.covers = tuple((self.elements[i], self.elements[j]) for i, j in kept)
        self.redundant_covers = tuple(dropped)
        self._hash = hash((self.elements, self.covers))
        self._dual = None

    # -- basic protocol -------------------------------------------------
    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, label):
        return label in self.index

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self.covers == other.covers

    def __hash__(self):
        return self._hash

    def __repr__(self):
        covers = " ".join(f"{a}<{b}" for a, b in self.covers)
        tag = f"{self.name}: " if self.name else ""
        return f"Poset({tag}{' '.join(self.elements)} | {covers})"

    # -- order queries ----------------------------------------------------
    def _idx(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise PosetError(f"unknown element {label!r}") from None

    def leq(self, a: str, b: str) -> bool:
        return bool((self._up[self._idx(a)] >> self._idx(b)) & 1)

    def lt(self, a: str, b: str) -> bool:
        return a != b and self.leq(a, b)

    def comparable(self, a: str, b: str) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def leq_index(self, i: int, j: int) -> bool:
        return bool((self._up[i] >> j) & 1)

    def up_mask(self, i: int) -> int:
        return self._up[i]

    def down_mask(self, i: int) -> int:
        return self._down[i]

    def up_set(self, a: str) -> frozenset:
        return frozenset(self.elements[j] for j in _bits(self._up[self._idx(a)]))

    def down_set(self, a: str) -> frozenset:
        return frozenset(self.elements[j] for j in _bits(self._down[self._idx(a)]))

    def lower_covers(self, a: str) -> tuple:
        return tuple(self.elements[j] for j in self._lower[self._idx(a)])

    def upper_covers(self, a: str) -> tuple:
        return tuple(self.elements[j] for j in self._upper[self._idx(a)])

    def lower_cover_indices(self, i: int) -> tuple:
        return self._lower[i]

    def upper_cover_indices(self, i: int) -> tuple:
        return self._upper[i]

    @property
    def linear_extension(self) -> tuple:
        """Element indices in the lexicographically least linear extension."""
        return self._linext

    def minimal_elements(self) -> tuple:
        return tuple(e for i, e in enumerate(self.elements) if not self._lower[i])

    def maximal_elements(self) -> tuple:
        return tuple(e for i, e in enumerate(self.elements) if not self._upper[i])

    def leq_matrix(self) -> list:
        n = len(self.elements)
        return [[(self._up[i] >> j) & 1 for j in range(n)] for i in range(n)]

    # -- derived posets --------------------------------------------------
    def dual(self) -> "Poset":
        if self._dual is None:
            name = f"{self.name}^op" if self.name else None
            d = Poset(self.elements, [(b, a) for a, b in self.covers], name=name)
            d._dual = self
            self._dual = d
        return self._dual

    def induced(self, subset: Iterable[str], name: str | None = None) -> "Poset":
        keep = sorted(set(subset))
        for e in keep:
            self._idx(e)
        pairs = [(a, b) for a in keep for b in keep if a != b and self.leq(a, b)]
        return Poset(keep, pairs, name=name)

    def relabel(self, mapping: dict, name: str | None = None) -> "Poset":
        return Poset([mapping[e] for e in self.elements],
                     [(mapping[a], mapping[b]) for a, b in self.covers], name=name)


@dataclass(frozen=True)
class PosetIdeal:
    parent: Poset
    members: frozenset

    def __post_init__(self):
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        P = self.parent
        for b in members:
            if not P.down_set(b) <= members:
                raise PosetError(f"not down-closed: {sorted(P.down_set(b) - members)} below {b!r}")

    def __contains__(self, label):
        return label in self.members

    def __len__(self):
        return len(self.members)

    def sorted(self) -> tuple:
        return tuple(sorted(self.members))


@dataclass(frozen=True)
class Classification:
    is_connected: bool
    is_antichain: bool
    is_rooted: bool
    is_co_rooted: bool
    components_all_rooted_or_corooted: bool

    def as_dict(self) -> dict:
        return {
            "is_connected": self.is_connected,
            "is_antichain": self.is_antichain,
            "is_rooted": self.is_rooted,
            "is_co_rooted": self.is_co_rooted,
            "components_all_rooted_or_corooted": self.components_all_rooted_or_corooted,
        }


def build_poset(elements, covers=(), name=None) -> Poset:
    return Poset(elements, covers, name=name)


def leq(P: Poset, a: str, b: str) -> bool:
    return P.leq(a, b)


def connected_components(P: Poset) -> list:
    """Connected components of the Hasse diagram, ordered by least label."""
    n = len(P)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in P.covers:
        ra, rb = find(P.index[a]), find(P.index[b])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(P.elements[i])
    comps = [groups[r] for r in sorted(groups)]
    if len(comps) == 1:
        return [P]
    return [P.induced(c) for c in comps]


def is_connected(P: Poset) -> bool:
    return len(P) > 0 and len(connected_components(P)) == 1


def _is_rooted_connected(P: Poset) -> bool:
    return all(len(P.lower_cover_indices(i)) <= 1 for i in range(len(P)))


def is_rooted(P: Poset) -> bool:
    """Connected, and every element has at most one lower cover.

    Equivalently every down-set is a chain; a rooted poset has a unique
    minimal element.
    """
    return is_connected(P) and _is_rooted_connected(P)


def is_co_rooted(P: Poset) -> bool:
    return is_rooted(P.dual())


def is_antichain(P: Poset) -> bool:
    return not P.covers


def classify(P: Poset) -> Classification:
    comps = connected_components(P) if len(P) else []
    return Classification(
        is_connected=len(comps) == 1,
        is_antichain=is_antichain(P),
        is_rooted=is_rooted(P),
        is_co_rooted=is_co_rooted(P),
        components_all_rooted_or_corooted=bool(comps) and all(
            is_rooted(C) or is_co_rooted(C) for C in comps),
    )


def extend_ideal(I: PosetIdeal) -> list:
    """All ``(p, I | {p})`` where ``p`` is minimal in the complement of ``I``."""
    P = I.parent
    out = []
    for p in P.elements:
        if p in I.members:
            continue
        if all(q in I.members for q in P.lower_covers(p)):
            out.append((p, PosetIdeal(P, I.members | {p})))
    return out


def largest_ideal_within(P: Poset, allowed) -> PosetIdeal:
    """Largest poset ideal contained in the set ``allowed``."""
    allowed = set(allowed)
    return PosetIdeal(P, frozenset(p for p in P.elements if P.down_set(p) <= allowed))


def poset_sum(*posets: Poset, name: str | None = None) -> Poset:
    elements, covers = [], []
    for Pi in posets:
        elements.extend(Pi.elements)
        covers.extend(Pi.covers)
    return Poset(elements, covers, name=name)


# -- named families ---------------------------------------------------------

def chain(n: int, prefix: str = "p", start: int = 0, name: str | None = None) -> Poset:
    labels = [f"{prefix}{start + i}" for i in range(n)]
    return Poset(labels, list(zip(labels, labels[1:])), name=name or f"chain{n}")


def antichain(n: int, prefix: str = "p", start: int = 0, name: str | None = None) -> Poset:
    return Poset([f"{prefix}{start + i}" for i in range(n)], name=name or f"antichain{n}")


def crown(n: int, name: str | None = None) -> Poset:
    """Minimal a1..an, maximal b1..bn, with a_i < b_j iff i != j (n >= 3)."""
    if n < 3:
        raise PosetError("crown needs n >= 3")
    a = [f"a{i}" for i in range(1, n + 1)]
    b = [f"b{i}" for i in range(1, n + 1)]
    covers = [(a[i], b[j]) for i in range(n) for j in range(n) if i != j]
    return Poset(a + b, covers, name=name or f"crown{n}")


def vee(name: str = "vee") -> Poset:
    return Poset("abc", [("a", "b"), ("a", "c")], name=name)


def wedge(name: str = "wedge") -> Poset:
    return Poset("abc", [("a", "c"), ("b", "c")], name=name)


def diamond(name: str = "diamond") -> Poset:
    return Poset("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")], name=name)


def butterfly(name: str = "butterfly") -> Poset:
    """Two minimal elements each below both of two maximal ones."""
    return Poset(["q1", "q2", "q3", "q4"],
                 [("q1", "q3"), ("q1", "q4"), ("q2", "q3"), ("q2", "q4")], name=name)


def with_relations(P: Poset, extra, name: str | None = None) -> Poset:
    return Poset(P.elements, list(P.covers) + list(extra), name=name)
