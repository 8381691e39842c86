"""Reduction to connected P.

For P = P1 + ... + Pr a map on P is a tuple of maps on the components, and
K[P,Q] is the Segre product of the K[Pi,Q].  Generation results pass from
the components to P; the converse is never inferred here.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from isotonian.homs import count_hom, join_maps
from isotonian.poset import Poset, connected_components
from isotonian.toric import (DEFAULT_MAX_DEGREE, Binomial, MonomialOfMaps, generation_report,
                             in_ideal)


@dataclass
class ComponentAnalysis:
    components: list
    per_component: list
    squarefree: bool
    quadratic: bool
    direct: object = None  # optional GenerationReport on P itself
    notes: list = field(default_factory=list)

    def as_dict(self) -> dict:
        out = {
            "components": [list(C.elements) for C in self.components],
            "per_component": [r.as_dict() for r in self.per_component],
            "combined": {
                "squarefree_up_to_D": self.squarefree,
                "quadratic_up_to_D": self.quadratic,
            },
            "notes": self.notes,
        }
        if self.direct is not None:
            out["direct"] = self.direct.as_dict()
        return out


def component_analysis(P: Poset, Q: Poset, max_degree: int = DEFAULT_MAX_DEGREE,
                       direct: bool = False, **caps) -> ComponentAnalysis:
    """Generation reports per component, combined where the reduction allows.

    A combined flag is True when every component flag is True.  Otherwise it
    is False only if the direct check on P (``direct=True``) exhibits a
    witness, and None (undecided) if not.
    """
    comps = connected_components(P)
    reports = [generation_report(C, Q, max_degree, **caps) for C in comps]
    res = ComponentAnalysis(comps, reports, squarefree=None, quadratic=None)
    if direct:
        res.direct = generation_report(P, Q, max_degree, **caps)
    for kind in ("squarefree", "quadratic"):
        verdicts = [r.verdict(kind) for r in reports]
        if all(v is True for v in verdicts):
            value = True
        elif res.direct is not None and res.direct.verdict(kind) is False:
            value = False
        else:
            value = None
            res.notes.append(f"{kind}: not all components pass; no conclusion for P without a direct check")
        setattr(res, kind, value)
    return res


def segre_hom_count_check(P: Poset, Q: Poset) -> bool:
    total = count_hom(P, Q)
    prod = 1
    for C in connected_components(P):
        prod *= count_hom(C, Q)
    return total == prod


# -- lifting decompositions from components ---------------------------------------

def _pair(P, P1, rest, phi):
    return (phi.restrict(P1), phi.restrict(rest))


def _walk(node, path, coord, joiner, shape):
    """Lift a path in one coordinate to a path on pairs.

    ``node`` is a Counter of pairs; each step's plus factors are matched to
    pairs carrying them in coordinate ``coord`` (partner taken smallest
    first), and replaced by the minus factors with the same partners.
    """
    out = []
    for t in path:
        chosen = []
        taken = Counter()
        for a in t.part.plus.factors:
            options = sorted((pr for pr in node if pr[coord] == a and node[pr] - taken[pr] > 0),
                             key=lambda pr: pr[1 - coord].key)
            pr = options[0]
            taken[pr] += 1
            chosen.append(pr)
        partners = [pr[1 - coord] for pr in chosen]
        replaced = []
        for a, other in zip(t.part.minus.factors, partners):
            replaced.append((a, other) if coord == 0 else (other, a))
        node = node - Counter(chosen)
        coef = MonomialOfMaps(joiner(pr) for pr in node.elements())
        part = Binomial(MonomialOfMaps(joiner(pr) for pr in chosen),
                        MonomialOfMaps(joiner(pr) for pr in replaced))
        out.append(_term(coef, part, t.shape))
        node = node + Counter(replaced)
    return node, out


def _term(coef, part, shape):
    from isotonian.special import Term
    return Term(coef, part, shape)


def over_components(f: Binomial, connected_fn, shape: str) -> list:
    """Decomposition path for ``f`` built from ``connected_fn`` on components.

    Split P = P1 + rest, rewrite the P1 coordinates along a P1 path, then the
    rest coordinates (recursively), then re-pair with quadratic swaps
    z(c,x) z(y,e) -> z(c,e) z(y,x).
    """
    from isotonian.special import Term

    P = f.plus.factors[0].source
    comps = connected_components(P)
    if len(comps) == 1:
        return connected_fn(f)
    P1 = comps[0]
    rest = P.induced([p for C in comps[1:] for p in C.elements])

    def joiner(pr):
        return join_maps(P, pr)

    start = Counter(_pair(P, P1, rest, phi) for phi in f.plus.factors)
    goal = Counter(_pair(P, P1, rest, phi) for phi in f.minus.factors)

    first = Binomial(MonomialOfMaps(a for a, _ in start.elements()),
                     MonomialOfMaps(c for c, _ in goal.elements()))
    node, terms1 = _walk(start, connected_fn(first) if not first.is_zero else [], 0, joiner, shape)

    second = Binomial(MonomialOfMaps(b for _, b in node.elements()),
                      MonomialOfMaps(e for _, e in goal.elements()))
    sub = over_components(second, connected_fn, shape) if not second.is_zero else []
    node, terms2 = _walk(node, sub, 1, joiner, shape)

    swaps = []
    remaining = Counter(node)
    todo = sorted(goal.elements(), key=lambda pr: (pr[0].key, pr[1].key))
    for c, e in todo:
        if remaining[(c, e)] > 0:
            remaining[(c, e)] -= 1
            continue
        cx = min((pr for pr in remaining if pr[0] == c and remaining[pr] > 0), key=lambda pr: pr[1].key)
        ye = min((pr for pr in remaining if pr[1] == e and remaining[pr] > 0), key=lambda pr: pr[0].key)
        yx = (ye[0], cx[1])
        before = node
        node = node - Counter([cx, ye]) + Counter([(c, e), yx])
        coef = MonomialOfMaps(joiner(pr) for pr in (before - Counter([cx, ye])).elements())
        part = Binomial(MonomialOfMaps([joiner(cx), joiner(ye)]), MonomialOfMaps([joiner((c, e)), joiner(yx)]))
        assert in_ideal(part) and not part.is_zero
        swaps.append(Term(coef, part, "quadratic" if shape == "quadratic" else shape))
        remaining[cx] -= 1
        remaining[ye] -= 1
        remaining[yx] += 1
    assert node == goal
    return terms1 + terms2 + swaps
