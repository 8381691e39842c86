"""Special binomials and explicit decompositions of relations of J(P,Q).

Every decomposition is produced as a *path* of monomials
``f+ = N0 -> N1 -> ... -> Nk = f-`` where each step is ``u * (s+ - s-)`` for
a coefficient monomial ``u`` and a part ``s``.  Summing the steps telescopes
to ``f``, which ``Combination.verify`` checks as a polynomial identity.

The algorithms work on rooted P.  Co-rooted P is handled through the order
duals of P and Q, and disconnected P through its components
(``isotonian.segre``).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from isotonian.cycles import PosetCycle, find_chord, is_cycle, is_proper
from isotonian.homs import IsotoneMap, modify_map
from isotonian.poset import Poset, PosetError, is_co_rooted, is_rooted
from isotonian.toric import ONE, Binomial, MonomialOfMaps, in_ideal


class SpecialError(ValueError):
    pass


class NotInIdeal(ValueError):
    pass


class ChordlessCycleError(ValueError):
    """A chordless proper cycle blocks the reduction to quadrics."""

    def __init__(self, cycle: PosetCycle):
        super().__init__("chordless proper poset cycle: " + " ".join(cycle.seq))
        self.cycle = cycle


# -- special binomials ---------------------------------------------------------

@dataclass(frozen=True)
class SpecialSpec:
    """Data of a special binomial of type (pivot, perm).

    ``perm`` is 0-based one-line notation.  The primed maps take the values
    of ``maps[perm[i]]`` on the up-set of ``pivot`` (the down-set when
    ``dual`` is set, used for co-rooted P) and of ``maps[i]`` elsewhere.
    """

    maps: tuple
    pivot: str
    perm: tuple
    dual: bool = False

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        object.__setattr__(self, "perm", tuple(self.perm))

    @property
    def degree(self) -> int:
        return len(self.maps)

    def flipped(self) -> "SpecialSpec":
        """The same data over the order duals, with ``dual`` toggled."""
        return SpecialSpec(tuple(phi.dual() for phi in self.maps), self.pivot, self.perm, not self.dual)

    def serialize(self) -> dict:
        return {
            "maps": [phi.serialize() for phi in self.maps],
            "pivot": self.pivot,
            "perm": [i + 1 for i in self.perm],
            "orientation": "down" if self.dual else "up",
        }


def _source(maps) -> Poset:
    return maps[0].source


def _check_permutation(perm, d):
    if sorted(perm) != list(range(d)):
        raise SpecialError(f"not a permutation of 1..{d}: {[i + 1 for i in perm]}")


def primed_maps(spec: SpecialSpec) -> list:
    """The maps phi'_i, validated."""
    if spec.dual:
        return [phi.dual() for phi in primed_maps(spec.flipped())]
    maps, d = spec.maps, spec.degree
    if d == 0:
        return []
    _check_permutation(spec.perm, d)
    P = _source(maps)
    if not is_rooted(P):
        raise SpecialError("special binomials need a rooted P")
    if spec.pivot not in P:
        raise SpecialError(f"unknown pivot {spec.pivot!r}")
    below = P.lower_covers(spec.pivot)
    Q = maps[0].target
    if below:
        (low,) = below
        for i in range(d):
            if not Q.leq(maps[i][low], maps[spec.perm[i]][spec.pivot]):
                raise SpecialError(
                    f"index {i + 1}: phi_{spec.perm[i] + 1}({spec.pivot}) = {maps[spec.perm[i]][spec.pivot]}"
                    f" is not >= phi_{i + 1}({low}) = {maps[i][low]}")
    up = P.up_set(spec.pivot)
    return [modify_map(maps[i], spec.pivot, {x: maps[spec.perm[i]][x] for x in up}) for i in range(d)]


def make_special(spec: SpecialSpec) -> Binomial:
    f = Binomial(MonomialOfMaps(spec.maps), MonomialOfMaps(primed_maps(spec)))
    assert in_ideal(f), "special binomial outside the ideal"
    return f


def is_special(f: Binomial, spec: SpecialSpec) -> bool:
    try:
        return make_special(spec) == f
    except (SpecialError, PosetError, ValueError):
        return False


# -- combinations ----------------------------------------------------------------

SHAPES = ("special", "cyclic", "squarefree", "quadratic", "binomial")


@dataclass
class Term:
    coefficient: MonomialOfMaps
    part: Binomial
    shape: str = "binomial"
    spec: SpecialSpec | None = None

    def scaled(self, u: MonomialOfMaps) -> "Term":
        return Term(u * self.coefficient, self.part, self.shape, self.spec)

    def negated(self) -> "Term":
        return Term(self.coefficient, -self.part, self.shape, None)

    @property
    def start(self) -> MonomialOfMaps:
        return self.coefficient * self.part.plus

    @property
    def end(self) -> MonomialOfMaps:
        return self.coefficient * self.part.minus


def _shape_ok(part: Binomial, shape: str) -> bool:
    if shape == "squarefree":
        return part.is_squarefree
    if shape == "quadratic":
        return part.degree == 2
    return True


@dataclass
class Combination:
    target: Binomial
    terms: list = field(default_factory=list)

    def formal_sum(self) -> dict:
        total = Counter()
        for t in self.terms:
            total[t.start] += 1
            total[t.end] -= 1
        return {m: c for m, c in total.items() if c}

    def sum_matches(self) -> bool:
        return self.formal_sum() == self.target.poly()

    def is_path(self) -> bool:
        node = self.target.plus
        for t in self.terms:
            if t.start != node:
                return False
            node = t.end
        return node == self.target.minus

    def failures(self, shape: str | None = None) -> list:
        bad = []
        if not self.sum_matches():
            bad.append("formal sum differs from the target")
        for k, t in enumerate(self.terms):
            if t.part.is_zero:
                bad.append(f"term {k}: zero part")
            if not in_ideal(t.part):
                bad.append(f"term {k}: part not in the ideal")
            want = shape or t.shape
            if not _shape_ok(t.part, want):
                bad.append(f"term {k}: part is not {want}")
            if t.spec is not None and make_special(t.spec) != t.part:
                bad.append(f"term {k}: part does not match its special data")
        return bad

    def verify(self, shape: str | None = None) -> bool:
        return not self.failures(shape)

    def serialize(self, shape: str | None = None) -> dict:
        return {
            "target": self.target.serialize(),
            "terms": [
                {
                    "coefficient": t.coefficient.serialize(),
                    "part": t.part.serialize(),
                    "shape": t.shape,
                    **({"special": t.spec.serialize()} if t.spec is not None else {}),
                }
                for t in self.terms
            ],
            "verified": self.verify(shape),
        }


def _scaled(terms, u):
    return [t.scaled(u) for t in terms]


def _reverse(terms):
    return [t.negated() for t in reversed(terms)]


def _dual_binomial(f: Binomial) -> Binomial:
    return Binomial(MonomialOfMaps(phi.dual() for phi in f.plus),
                    MonomialOfMaps(phi.dual() for phi in f.minus))


def _dual_term(t: Term) -> Term:
    return Term(MonomialOfMaps(phi.dual() for phi in t.coefficient), _dual_binomial(t.part),
                t.shape, t.spec.flipped() if t.spec is not None else None)


def _prepare(f: Binomial) -> Poset:
    if not in_ideal(f):
        raise NotInIdeal("binomial is not in J(P,Q)")
    return _source(f.plus.factors or f.minus.factors) if f.degree else None


def _oriented(f: Binomial, rooted_algorithm):
    """Run a rooted-P algorithm on f, going through duals for co-rooted P."""
    P = _source(f.plus.factors)
    if is_rooted(P):
        return rooted_algorithm(f)
    if is_co_rooted(P):
        return [_dual_term(t) for t in rooted_algorithm(_dual_binomial(f))]
    raise PosetError("P must be rooted or co-rooted")


# -- generation by special binomials ------------------------------------------

def _agreement(P: Poset, a: IsotoneMap, b: IsotoneMap) -> int:
    same = {p for p in P.elements if a[p] == b[p]}
    return sum(1 for p in P.elements if P.down_set(p) <= same)


def _align(P: Poset, phis, psis) -> list:
    """Reorder ``psis`` to match ``phis`` at the minimum of P.

    Each phi (in order) takes the unused psi with the same root value that
    agrees with it on the largest poset ideal, ties going to the smaller map.
    """
    (root,) = P.minimal_elements()
    free = sorted(psis)
    out = []
    for phi in phis:
        best, best_score = None, -1
        for k, psi in enumerate(free):
            if psi[root] != phi[root]:
                continue
            score = _agreement(P, phi, psi)
            if score > best_score:
                best, best_score = k, score
        if best is None:
            raise AssertionError("cannot align factors at the root; binomial not in the ideal")
        out.append(free.pop(best))
    return out


def _special_chain(f: Binomial) -> list:
    P = _source(f.plus.factors)
    phis = list(f.plus.factors)
    psis = _align(P, phis, list(f.minus.factors))
    specs = []
    last = -1
    for _ in range(len(P) + 1):
        same = {p for p in P.elements if all(a[p] == b[p] for a, b in zip(phis, psis))}
        ideal = {p for p in P.elements if P.down_set(p) <= same}
        if len(ideal) == len(P):
            return specs
        assert len(ideal) > last, "agreement ideal did not grow"
        last = len(ideal)
        pivot = next(p for p in P.elements
                     if p not in ideal and all(q in ideal for q in P.lower_covers(p)))
        used = set()
        perm = []
        for i in range(len(phis)):
            j = next(j for j in range(len(phis)) if j not in used and phis[j][pivot] == psis[i][pivot])
            used.add(j)
            perm.append(j)
        spec = SpecialSpec(tuple(phis), pivot, tuple(perm))
        specs.append(spec)
        phis = primed_maps(spec)
    raise AssertionError("special decomposition did not terminate")


def decompose_to_special(f: Binomial) -> list:
    """Special data whose binomials sum to ``f`` (each with coefficient 1)."""
    P = _prepare(f)
    if f.is_zero:
        return []
    if is_rooted(P):
        return _special_chain(f)
    if is_co_rooted(P):
        return [s.flipped() for s in _special_chain(_dual_binomial(f))]
    raise PosetError("decompose_to_special needs a rooted or co-rooted P")


def special_combination(f: Binomial) -> Combination:
    terms = []
    for spec in decompose_to_special(f):
        part = make_special(spec)
        if not part.is_zero:
            terms.append(Term(ONE, part, "special", spec))
    return Combination(f, terms)


# -- cyclic permutations ------------------------------------------------------

def cycles_of(perm) -> list:
    """Nontrivial cycles of a 0-based permutation, each starting at its least
    entry, ordered by that entry."""
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        if len(cyc) > 1:
            out.append(cyc)
    return out


def _shift(k):
    return tuple((r + 1) % k for r in range(k))


def cyclic_decompose(spec: SpecialSpec) -> Combination:
    """Split a special binomial along the cycles of its permutation.

    With f_c the special binomial of one cycle c (its maps listed along the
    cycle, so its permutation is r -> r + 1), and u the product of the maps
    fixed by the permutation,
    f = sum_c u * prod_{c' < c} f_c'^- * f_c * prod_{c' > c} f_c'^+.
    """
    f = make_special(spec)
    primed = primed_maps(spec)
    cycs = cycles_of(spec.perm)
    moved = {i for c in cycs for i in c}
    u = MonomialOfMaps(spec.maps[i] for i in range(spec.degree) if i not in moved)
    parts = []
    for c in cycs:
        sub = SpecialSpec(tuple(spec.maps[i] for i in c), spec.pivot, _shift(len(c)), spec.dual)
        part = make_special(sub)
        assert part.minus == MonomialOfMaps(primed[i] for i in c)
        parts.append((sub, part))
    terms = []
    for k, (sub, part) in enumerate(parts):
        coef = u
        for _, other in parts[:k]:
            coef = coef * other.minus
        for _, other in parts[k + 1:]:
            coef = coef * other.plus
        if not part.is_zero:
            terms.append(Term(coef, part, "cyclic", sub))
    return Combination(f, terms)


def cycle_form(spec: SpecialSpec) -> SpecialSpec:
    """A single-cycle spec relisted so that its permutation is r -> r + 1."""
    cycs = cycles_of(spec.perm)
    if len(cycs) != 1 or len(cycs[0]) != spec.degree:
        raise SpecialError("permutation is not a full cycle")
    return SpecialSpec(tuple(spec.maps[i] for i in cycs[0]), spec.pivot, _shift(spec.degree), spec.dual)


# -- squarefree -------------------------------------------------------------------

def _first_repeat(maps):
    for i in range(len(maps)):
        for j in range(i + 1, len(maps)):
            if maps[i] == maps[j]:
                return i, j
    return None


def _sqfree_cyclic(spec: SpecialSpec) -> list:
    # spec is rooted-oriented, permutation r -> r + 1
    f = make_special(spec)
    if f.is_zero:
        return []
    if f.degree <= 2 or f.is_squarefree:
        return [Term(ONE, f, "squarefree")]
    phis = list(spec.maps)
    psis = primed_maps(spec)
    rep = _first_repeat(phis)
    if rep is None:
        # repeated factor on the other side: f is special of the inverse
        # cyclic type with respect to the primed maps, listed backwards
        back = SpecialSpec(tuple(reversed(psis)), spec.pivot, _shift(len(psis)))
        assert make_special(back) == -f
        return _reverse(_sqfree_cyclic(back))
    i, j = rep
    seg = SpecialSpec(tuple(phis[i:j]), spec.pivot, _shift(j - i))
    g = make_special(seg)
    assert g.minus == MonomialOfMaps(psis[i:j])
    coef = f.plus / g.plus
    h = Binomial(coef, f.minus / g.minus)
    return _scaled(_sqfree_cyclic(seg), coef) + _scaled(_sqfree_rooted(h), g.minus)


def _sqfree_rooted(f: Binomial) -> list:
    if f.is_zero:
        return []
    if f.is_squarefree:
        return [Term(ONE, f, "squarefree")]
    terms = []
    for spec in _special_chain(f):
        for t in cyclic_decompose(spec).terms:
            terms.extend(_scaled(_sqfree_cyclic(cycle_form(t.spec)), t.coefficient))
    return terms


def _connected(f: Binomial, rooted_algorithm) -> list:
    return _oriented(f, rooted_algorithm)


def squarefree_decompose(f: Binomial) -> Combination:
    """Write ``f`` through squarefree binomials of J(P,Q).

    Needs every connected component of P rooted or co-rooted.
    """
    from isotonian import segre

    _prepare(f)
    if f.is_zero:
        return Combination(f, [])
    terms = segre.over_components(f, lambda g: _connected(g, _sqfree_rooted), "squarefree")
    return Combination(f, terms)


# -- quadratic ---------------------------------------------------------------------

def _quad_cyclic(spec: SpecialSpec) -> list:
    f = make_special(spec)
    if f.is_zero:
        return []
    if f.degree <= 2:
        return [Term(ONE, f, "quadratic")]
    m = f.degree
    # relist so that the permutation is r -> r - 1: phi'_r = phi_{r-1} above
    # the pivot and phi'_1 = phi_m
    phis = list(reversed(spec.maps))
    P = _source(phis)
    Q = phis[0].target
    p = spec.pivot
    (low,) = P.lower_covers(p)
    seq = []
    for phi in phis:
        seq.extend((phi[low], phi[p]))
    assert is_cycle(Q, seq)
    cyc = PosetCycle(Q, seq)
    chord = find_chord(cyc)
    if chord is None:
        if is_proper(cyc):
            raise ChordlessCycleError(cyc)
        raise AssertionError("non-proper cycle without a chord")
    a, b = chord
    s = (a - 1) // 2
    phis = phis[s:] + phis[:s]
    i = ((b - (a - 1) - 1) % (2 * m) + 1) // 2
    assert 2 <= i <= m - 1 and Q.leq(phis[0][low], phis[i - 1][p])
    rot = SpecialSpec(tuple(phis), p, tuple((r - 1) % m for r in range(m)))
    primed = primed_maps(rot)
    assert MonomialOfMaps(primed) == f.minus and MonomialOfMaps(phis) == f.plus
    up = P.up_set(p)
    psi1 = modify_map(phis[0], p, {x: phis[i - 1][x] for x in up})
    # 0-based: phis[:i] are phi_1..phi_i, phis[i:] are phi_{i+1}..phi_m
    g = Binomial(MonomialOfMaps([psi1] + phis[i:]), MonomialOfMaps([primed[0]] + primed[i:]))
    h = Binomial(MonomialOfMaps(phis[:i]), MonomialOfMaps([psi1] + primed[1:i]))
    A = MonomialOfMaps(phis[i:])
    B = MonomialOfMaps(primed[1:i])
    assert A * h.plus == f.plus and A * h.minus == B * g.plus and B * g.minus == f.minus
    return _scaled(_quad_rooted(h), A) + _scaled(_quad_rooted(g), B)


def _quad_rooted(f: Binomial) -> list:
    if f.is_zero:
        return []
    if f.degree <= 2:
        return [Term(ONE, f, "quadratic")]
    terms = []
    for spec in _special_chain(f):
        for t in cyclic_decompose(spec).terms:
            terms.extend(_scaled(_quad_cyclic(cycle_form(t.spec)), t.coefficient))
    return terms


def quadratic_decompose(f: Binomial) -> Combination:
    """Write ``f`` through quadratic binomials of J(P,Q).

    Needs every component of P rooted or co-rooted and every proper poset
    cycle of Q of length >= 6 to have a chord; a chordless proper cycle met
    on the way raises ``ChordlessCycleError``.
    """
    from isotonian import segre

    _prepare(f)
    if f.is_zero:
        return Combination(f, [])
    terms = segre.over_components(f, lambda g: _connected(g, _quad_rooted), "quadratic")
    return Combination(f, terms)


def decompose(f: Binomial, target: str) -> Combination:
    if target == "special":
        return special_combination(f)
    if target == "squarefree":
        return squarefree_decompose(f)
    if target == "quadratic":
        return quadratic_decompose(f)
    raise ValueError(f"unknown decomposition target {target!r}")
