"""The toric ideal J(P,Q) through its fibers.

A binomial  t_phi1...t_phid - t_psi1...t_psid  lies in J(P,Q) exactly when,
for every p in P, the multisets {phi_i(p)} and {psi_i(p)} agree.  The
degree-d monomials therefore split into fibers by that multidegree, and a set
of binomials generates J(P,Q) iff every fiber is connected by the moves it
induces.  Generation is only checked up to a degree bound.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from isotonian import kernels
from isotonian.homs import hom_set
from isotonian.poset import Poset

DEFAULT_MAX_DEGREE = 4
MAX_FIBER_SIZE = 20_000
MAX_FIBERS_PER_DEGREE = 200_000
MAX_MONOMIALS_PER_DEGREE = 20_000_000


class DegreeMismatch(ValueError):
    pass


class MonomialOfMaps:
    """A multiset of isotone maps, kept sorted."""

    __slots__ = ("factors", "_hash")

    def __init__(self, factors=()):
        self.factors = tuple(sorted(factors))
        self._hash = hash(tuple(f.images for f in self.factors))

    @property
    def degree(self) -> int:
        return len(self.factors)

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __eq__(self, other):
        if not isinstance(other, MonomialOfMaps):
            return NotImplemented
        return self.factors == other.factors

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return tuple(f.key for f in self.factors)

    def __mul__(self, other: "MonomialOfMaps") -> "MonomialOfMaps":
        return MonomialOfMaps(self.factors + other.factors)

    def counter(self) -> Counter:
        return Counter(self.factors)

    def divides(self, other: "MonomialOfMaps") -> bool:
        mine, theirs = self.counter(), other.counter()
        return all(theirs[f] >= c for f, c in mine.items())

    def __truediv__(self, other: "MonomialOfMaps") -> "MonomialOfMaps":
        rest = self.counter()
        rest.subtract(other.counter())
        if any(c < 0 for c in rest.values()):
            raise ValueError("monomial does not divide")
        return MonomialOfMaps(rest.elements())

    def gcd(self, other: "MonomialOfMaps") -> "MonomialOfMaps":
        return MonomialOfMaps((self.counter() & other.counter()).elements())

    @property
    def is_squarefree(self) -> bool:
        return len(set(self.factors)) == len(self.factors)

    def serialize(self) -> list:
        return [f.serialize() for f in self.factors]

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(f"t[{f.serialize()}]" for f in self.factors)

    __repr__ = __str__


ONE = MonomialOfMaps()


class Binomial:
    """plus - minus, both of the same degree."""

    __slots__ = ("plus", "minus")

    def __init__(self, plus, minus):
        plus = plus if isinstance(plus, MonomialOfMaps) else MonomialOfMaps(plus)
        minus = minus if isinstance(minus, MonomialOfMaps) else MonomialOfMaps(minus)
        if plus.degree != minus.degree:
            raise DegreeMismatch(f"degrees differ: {plus.degree} vs {minus.degree}")
        self.plus = plus
        self.minus = minus

    @property
    def degree(self) -> int:
        return self.plus.degree

    @property
    def is_zero(self) -> bool:
        return self.plus == self.minus

    @property
    def is_squarefree(self) -> bool:
        return self.plus.is_squarefree and self.minus.is_squarefree

    @property
    def is_quadratic(self) -> bool:
        return self.degree == 2

    def __neg__(self) -> "Binomial":
        return Binomial(self.minus, self.plus)

    def __eq__(self, other):
        if not isinstance(other, Binomial):
            return NotImplemented
        return self.plus == other.plus and self.minus == other.minus

    def __hash__(self):
        return hash((self.plus, self.minus))

    def poly(self) -> dict:
        """The binomial as a polynomial ``{monomial: coefficient}``."""
        if self.is_zero:
            return {}
        return {self.plus: 1, self.minus: -1}

    def reduced(self) -> "Binomial":
        """Divide out the common factor of both sides."""
        g = self.plus.gcd(self.minus)
        return Binomial(self.plus / g, self.minus / g)

    def serialize(self) -> dict:
        return {"plus": self.plus.serialize(), "minus": self.minus.serialize()}

    def __str__(self):
        return f"{self.plus} - {self.minus}"

    __repr__ = __str__


@dataclass(frozen=True)
class Multidegree:
    """For each source element, the sorted multiset of target labels hit."""

    per_element: tuple  # ((p, (q, ...)), ...) in source label order

    @property
    def degree(self) -> int:
        return len(self.per_element[0][1]) if self.per_element else 0

    def as_dict(self) -> dict:
        return {p: list(qs) for p, qs in self.per_element}


def multidegree(m: MonomialOfMaps) -> Multidegree:
    if not m.factors:
        return Multidegree(())
    P = m.factors[0].source
    order = m.factors[0].target.index.__getitem__
    return Multidegree(tuple((p, tuple(sorted((f[p] for f in m.factors), key=order)))
                             for p in P.elements))


def in_ideal(b: Binomial) -> bool:
    return multidegree(b.plus) == multidegree(b.minus)


@dataclass
class Fiber:
    degree: int
    multidegree: Multidegree
    members: list

    def __len__(self):
        return len(self.members)

    def dump(self, components=None) -> dict:
        out = {
            "degree": self.degree,
            "multidegree": self.multidegree.as_dict(),
            "members": [m.serialize() for m in self.members],
        }
        if components is not None:
            out["components"] = [list(c) for c in components]
        return out


def _monomial_from_indices(hs, mono) -> MonomialOfMaps:
    return MonomialOfMaps(hs.maps[i] for i in mono)


def _fiber_from_indices(hs, d, key, monos) -> Fiber:
    members = [_monomial_from_indices(hs, m) for m in monos]
    Q = hs.Q.elements
    md = Multidegree(tuple((p, tuple(Q[q] for q in qs)) for p, qs in zip(hs.P.elements, key)))
    return Fiber(d, md, members)


def enumerate_fiber(seed: MonomialOfMaps, P: Poset | None = None, Q: Poset | None = None) -> Fiber:
    """All monomials with the multidegree of ``seed``, in canonical order."""
    if not seed.factors:
        return Fiber(0, Multidegree(()), [seed])
    P = P or seed.factors[0].source
    Q = Q or seed.factors[0].target
    hs = hom_set(P, Q)
    idx = tuple(sorted(hs.position(f) for f in seed.factors))
    key = kernels.multidegree_key(hs.table, idx)
    n_q = len(Q)
    counts = [0] * (len(P) * n_q)
    for k, qs in enumerate(key):
        for q in qs:
            counts[k * n_q + q] += 1
    monos = kernels.fiber_members(hs.table, n_q, counts, seed.degree)
    return _fiber_from_indices(hs, seed.degree, key, monos)


@dataclass
class Connectivity:
    connected: bool
    components: list  # lists of member positions, sorted


def degree_at_most(k: int) -> Callable[[Binomial], bool]:
    return lambda b: b.degree <= k


def squarefree_moves(b: Binomial) -> bool:
    return b.is_squarefree


def quadratic_moves(b: Binomial) -> bool:
    return b.degree <= 2


def fiber_connected_under(f: Fiber, move_filter: Callable[[Binomial], bool]) -> Connectivity:
    """Connectivity of the fiber graph whose moves pass ``move_filter``.

    Members ``m = u*s`` and ``m' = u*s'`` are adjacent when ``s - s'`` is an
    accepted move.  The filter is applied to the coprime pair
    ``m/gcd - m'/gcd``, so it must accept a move whenever it accepts one with
    extra common factors (true for degree bounds and squarefreeness).
    """
    n = len(f.members)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if find(i) == find(j):
                continue
            move = Binomial(f.members[i], f.members[j]).reduced()
            if move_filter(move):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    comps = sorted(groups.values())
    return Connectivity(len(comps) <= 1, comps)


def polynomial_identity_check(b: Binomial) -> bool:
    """Independent membership test: both sides map to the same x-monomial."""
    def image(m):
        exps = Counter()
        for phi in m.factors:
            for p in phi.source.elements:
                exps[(p, phi[p])] += 1
        return exps
    return image(b.plus) == image(b.minus)


@dataclass
class DegreeStats:
    degree: int
    monomials: int
    fibers: int
    nontrivial_fibers: int
    largest_fiber: int
    max_move_degree: int
    squarefree_disconnected: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class GenerationReport:
    source: Poset
    target: Poset
    max_degree: int
    hom_size: int
    degrees: list = field(default_factory=list)
    checked_up_to: int = 0
    inconclusive_above: int | None = None
    inconclusive_reason: str | None = None
    min_gen_degree: int = 0
    squarefree: bool = True
    quadratic: bool = True
    squares_isolated: bool = True
    witnesses: dict = field(default_factory=dict)

    @property
    def fibers_checked(self) -> int:
        return sum(s.fibers for s in self.degrees)

    @property
    def conclusive(self) -> bool:
        return self.inconclusive_above is None

    def verdict(self, kind: str):
        """True / False, or None when no negative witness was found but the
        search stopped early."""
        value = {"quadratic": self.quadratic, "squarefree": self.squarefree}[kind]
        if not value:
            return False
        return True if self.conclusive else None

    def as_dict(self) -> dict:
        return {
            "source": _poset_dict(self.source),
            "target": _poset_dict(self.target),
            "hom_size": self.hom_size,
            "max_degree": self.max_degree,
            "degrees": [s.as_dict() for s in self.degrees],
            "fibers_checked": self.fibers_checked,
            "checked_up_to": self.checked_up_to,
            "status": "complete" if self.conclusive else "inconclusive",
            "inconclusive_above": self.inconclusive_above,
            "inconclusive_reason": self.inconclusive_reason,
            "verdicts": {
                "min_gen_degree_up_to_D": self.min_gen_degree,
                "squarefree_generated_up_to_D": self.squarefree,
                "quadratic_generated_up_to_D": self.quadratic,
                "quadratic_monomials_squarefree": self.squares_isolated,
            },
            "witnesses": self.witnesses,
        }


def _poset_dict(P: Poset) -> dict:
    return {"name": P.name, "elements": list(P.elements), "covers": [f"{a}<{b}" for a, b in P.covers]}


def _components(monos, d, threshold=None, squarefree=False):
    n = len(monos)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        a = Counter(monos[i])
        for j in range(i + 1, n):
            b = Counter(monos[j])
            common = a & b
            ra, rb = a - common, b - common
            if squarefree:
                ok = all(c == 1 for c in ra.values()) and all(c == 1 for c in rb.values())
            else:
                ok = sum(ra.values()) <= threshold
            if ok:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def generation_report(P: Poset, Q: Poset, max_degree: int = DEFAULT_MAX_DEGREE, *,
                      max_fiber_size: int = MAX_FIBER_SIZE,
                      max_fibers: int = MAX_FIBERS_PER_DEGREE,
                      max_monomials: int = MAX_MONOMIALS_PER_DEGREE,
                      threads: int = 1) -> GenerationReport:
    """Check generation of J(P,Q) on every fiber of degree <= max_degree."""
    if max_degree < 2:
        raise ValueError("max_degree must be at least 2")
    hs = hom_set(P, Q)
    if len(hs) == 0:
        raise ValueError("Hom(P,Q) is empty")
    rep = GenerationReport(P, Q, max_degree, len(hs))
    n_q = len(Q)
    best_fiber = None  # (bottleneck, d, key, monos)
    for d in range(1, max_degree + 1):
        n_monos = math.comb(len(hs) + d - 1, d)
        if n_monos > max_monomials:
            rep.inconclusive_above = d - 1
            rep.inconclusive_reason = f"{n_monos} monomials of degree {d} exceed the cap {max_monomials}"
            break
        groups = kernels.group_fibers(hs.table, n_q, d, max_fibers)
        if groups is None:
            rep.inconclusive_above = d - 1
            rep.inconclusive_reason = f"more than {max_fibers} fibers in degree {d}"
            break
        largest = max(len(v) for v in groups.values())
        if largest > max_fiber_size:
            rep.inconclusive_above = d - 1
            rep.inconclusive_reason = f"a degree {d} fiber has {largest} > {max_fiber_size} members"
            break
        keys = sorted(k for k, v in groups.items() if len(v) > 1)
        if threads > 1 and len(keys) > 1:
            with ThreadPoolExecutor(threads) as ex:
                profiles = list(ex.map(lambda k: kernels.fiber_profile(groups[k], d), keys))
        else:
            profiles = [kernels.fiber_profile(groups[k], d) for k in keys]

        top = 0
        sq_bad = 0
        for key, (bottleneck, sq_ok) in zip(keys, profiles):
            monos = groups[key]
            top = max(top, bottleneck)
            if best_fiber is None or bottleneck > best_fiber[0]:
                best_fiber = (bottleneck, d, key, monos)
            if bottleneck > 2 and "quadratic" not in rep.witnesses:
                fiber = _fiber_from_indices(hs, d, key, monos)
                rep.witnesses["quadratic"] = fiber.dump(_components(monos, d, threshold=2))
            if not sq_ok:
                sq_bad += 1
                if "squarefree" not in rep.witnesses:
                    fiber = _fiber_from_indices(hs, d, key, monos)
                    rep.witnesses["squarefree"] = fiber.dump(_components(monos, d, squarefree=True))
            if d == 2 and any(m[0] == m[1] for m in monos):
                rep.squares_isolated = False
        rep.degrees.append(DegreeStats(d, n_monos, len(groups), len(keys), largest, top, sq_bad))
        rep.checked_up_to = d

    if best_fiber is not None and best_fiber[0] > 0:
        k, d, key, monos = best_fiber
        fiber = _fiber_from_indices(hs, d, key, monos)
        rep.witnesses["min_gen_degree"] = fiber.dump(_components(monos, d, threshold=k - 1))
        rep.min_gen_degree = k
    rep.quadratic = rep.min_gen_degree <= 2
    rep.squarefree = "squarefree" not in rep.witnesses
    return rep
