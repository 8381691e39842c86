"""Isotone maps P -> Q and their monomials u_phi."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from isotonian import kernels
from isotonian.poset import Poset, PosetError, is_rooted


class MapConditionError(ValueError):
    """A modification violates one of the conditions making it isotone."""

    def __init__(self, condition: str, message: str):
        super().__init__(f"condition {condition}: {message}")
        self.condition = condition


class IsotoneMap:
    """An order preserving map, stored as target indices per source element.

    Maps between the same pair of posets are totally ordered by their values
    along the fixed linear extension of the source (lexicographic, with
    target elements compared by label).
    """

    __slots__ = ("source", "target", "images", "key")

    def __init__(self, source: Poset, target: Poset, images: tuple):
        self.source = source
        self.target = target
        self.images = tuple(images)
        self.key = tuple(self.images[i] for i in source.linear_extension)

    @classmethod
    def from_assignment(cls, P: Poset, Q: Poset, assignment: dict, check: bool = True) -> "IsotoneMap":
        missing = [p for p in P.elements if p not in assignment]
        if missing:
            raise PosetError(f"assignment undefined on {' '.join(missing)}")
        extra = [p for p in assignment if p not in P]
        if extra:
            raise PosetError(f"assignment mentions unknown source elements {' '.join(map(str, extra))}")
        for q in assignment.values():
            if q not in Q:
                raise PosetError(f"unknown target element {q!r}")
        if check and not is_isotone(P, Q, assignment):
            raise PosetError("assignment is not order preserving: " + _format(P, assignment))
        return cls(P, Q, tuple(Q.index[assignment[p]] for p in P.elements))

    def __getitem__(self, p: str) -> str:
        return self.target.elements[self.images[self.source.index[p]]]

    def as_dict(self) -> dict:
        Q = self.target.elements
        return {p: Q[i] for p, i in zip(self.source.elements, self.images)}

    def __eq__(self, other):
        if not isinstance(other, IsotoneMap):
            return NotImplemented
        return self.images == other.images and self.source == other.source and self.target == other.target

    def __hash__(self):
        return hash(self.images)

    def __lt__(self, other):
        return self.key < other.key

    def __le__(self, other):
        return self.key <= other.key

    def __gt__(self, other):
        return self.key > other.key

    def __ge__(self, other):
        return self.key >= other.key

    def serialize(self) -> str:
        return _format(self.source, self.as_dict())

    def __repr__(self):
        return f"<{self.serialize()}>"

    def dual(self) -> "IsotoneMap":
        """The same function seen as a map between the order duals."""
        return IsotoneMap(self.source.dual(), self.target.dual(), self.images)

    def restrict(self, sub: Poset) -> "IsotoneMap":
        return IsotoneMap(sub, self.target, tuple(self.images[self.source.index[p]] for p in sub.elements))


def _format(P: Poset, assignment: dict) -> str:
    return ", ".join(f"{p}->{assignment[p]}" for p in P.elements)


def parse_map(P: Poset, Q: Poset, text: str) -> IsotoneMap:
    """Inverse of ``IsotoneMap.serialize``: ``"p1->q3, p2->q1"``."""
    assignment = {}
    for item in text.replace(",", " ").split():
        if "->" not in item:
            raise PosetError(f"bad map item {item!r}, expected p->q")
        p, q = item.split("->", 1)
        if p in assignment:
            raise PosetError(f"element {p!r} assigned twice")
        assignment[p] = q
    return IsotoneMap.from_assignment(P, Q, assignment)


def join_maps(P: Poset, parts) -> IsotoneMap:
    """Glue maps defined on disjoint pieces of ``P`` into one map on ``P``."""
    images = [None] * len(P)
    target = None
    for phi in parts:
        target = phi.target
        for p, i in zip(phi.source.elements, phi.images):
            images[P.index[p]] = i
    return IsotoneMap(P, target, tuple(images))


@dataclass(frozen=True)
class GeneratorMonomial:
    map: IsotoneMap
    exponents: tuple  # ((p, q), ...) one factor x_{p,q} per source element

    def __str__(self):
        return "*".join(f"x[{p},{q}]" for p, q in self.exponents)


def is_isotone(P: Poset, Q: Poset, assignment: dict) -> bool:
    # checking covers suffices by transitivity
    return all(Q.leq(assignment[a], assignment[b]) for a, b in P.covers)


class HomSet:
    """Hom(P, Q) in its canonical order, with the table the kernels use."""

    def __init__(self, P: Poset, Q: Poset):
        self.P = P
        self.Q = Q
        linext = P.linear_extension
        pos = {i: k for k, i in enumerate(linext)}
        lower = [tuple(pos[j] for j in P.lower_cover_indices(i)) for i in linext]
        up_masks = [Q.up_mask(q) for q in range(len(Q))]
        rows = kernels.hom_table(len(P), lower, up_masks, len(Q))
        n = len(P)
        table = []
        for row in rows:
            images = [0] * n
            for k, i in enumerate(linext):
                images[i] = row[k]
            table.append(tuple(images))
        self.table = table
        self.maps = [IsotoneMap(P, Q, t) for t in table]
        self.index = {t: m for m, t in enumerate(table)}

    def __len__(self):
        return len(self.maps)

    def __iter__(self):
        return iter(self.maps)

    def __getitem__(self, i):
        return self.maps[i]

    def position(self, phi: IsotoneMap) -> int:
        return self.index[phi.images]


@lru_cache(maxsize=256)
def hom_set(P: Poset, Q: Poset) -> HomSet:
    return HomSet(P, Q)


def enumerate_hom(P: Poset, Q: Poset) -> list:
    """All isotone maps P -> Q, sorted, found by backtracking along a linear
    extension of P."""
    return list(hom_set(P, Q).maps)


def count_hom(P: Poset, Q: Poset) -> int:
    return len(hom_set(P, Q))


def modify_map(phi: IsotoneMap, p: str, values: dict) -> IsotoneMap:
    """Replace ``phi`` on the up-set of ``p`` by ``values``.

    ``P`` must be rooted.  ``values`` has to be defined exactly on the up-set
    ("domain"), order preserving there ("isotone") and, if ``p`` has a lower
    cover ``q``, satisfy ``values[p] >= phi(q)`` ("lower-cover"); the result
    is then isotone.
    """
    P, Q = phi.source, phi.target
    if not is_rooted(P):
        raise PosetError("modify_map needs a rooted source poset")
    up = P.up_set(p)
    if set(values) != up:
        raise MapConditionError("domain", f"values must be given exactly on the up-set {sorted(up)} of {p}")
    for q in values.values():
        if q not in Q:
            raise PosetError(f"unknown target element {q!r}")
    for a in up:
        for b in P.upper_covers(a):
            if not Q.leq(values[a], values[b]):
                raise MapConditionError("isotone", f"{a}<{b} but {values[a]} is not <= {values[b]}")
    below = P.lower_covers(p)
    if below:
        (q,) = below
        if not Q.leq(phi[q], values[p]):
            raise MapConditionError("lower-cover", f"{values[p]} is not >= {phi[q]} = phi({q})")
    assignment = phi.as_dict()
    assignment.update(values)
    if not is_isotone(P, Q, assignment):
        raise AssertionError("modified map is not isotone: " + _format(P, assignment))
    return IsotoneMap(P, Q, tuple(Q.index[assignment[x]] for x in P.elements))


def monomial_image(phi: IsotoneMap) -> GeneratorMonomial:
    return GeneratorMonomial(phi, tuple((p, phi[p]) for p in phi.source.elements))
