import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isotonian.campaigns import random_binomial
from isotonian.cycles import chordless_proper_cycles
from isotonian.homs import IsotoneMap
from isotonian.poset import PosetError, antichain, is_connected, chain, crown, poset_sum, vee, wedge, with_relations
from isotonian.special import (ChordlessCycleError, Combination, NotInIdeal, SpecialError,
                               SpecialSpec, Term, cycle_form, cycles_of, cyclic_decompose,
                               decompose, decompose_to_special, is_special, make_special,
                               primed_maps, quadratic_decompose, special_combination,
                               squarefree_decompose)
from isotonian.toric import ONE, Binomial, MonomialOfMaps, in_ideal

from strategies import posets

C2, C3 = chain(2), chain(3)
CROWN = crown(3)
CROWN_CHORD = with_relations(crown(3), [("a1", "b1")], name="crown3chord")
SOURCES = [C2, C3, vee(), wedge(), poset_sum(C2, antichain(1, prefix="x")),
           poset_sum(C2, chain(2, prefix="r")), poset_sum(vee(), wedge().relabel({"a": "d", "b": "e", "c": "f"}))]


def maps(P, Q, *rows):
    return tuple(IsotoneMap.from_assignment(P, Q, dict(zip(P.elements, r))) for r in rows)


def hexagon():
    return Binomial(MonomialOfMaps(maps(C2, CROWN, ("a1", "b2"), ("a2", "b3"), ("a3", "b1"))),
                    MonomialOfMaps(maps(C2, CROWN, ("a1", "b3"), ("a2", "b1"), ("a3", "b2"))))


def test_special_binomial_of_crown():
    phis = maps(C2, CROWN, ("a1", "b2"), ("a2", "b3"), ("a3", "b1"))
    spec = SpecialSpec(phis, "p1", (1, 2, 0))
    f = make_special(spec)
    assert f == hexagon()
    assert is_special(f, spec)
    assert spec.serialize()["perm"] == [2, 3, 1]


def test_primed_maps_lower_cover_failure():
    phis = maps(C2, CROWN, ("a1", "b2"), ("a2", "b3"))
    with pytest.raises(SpecialError, match="index 2"):
        primed_maps(SpecialSpec(phis, "p1", (1, 0)))


def test_primed_maps_bad_input():
    phis = maps(C2, CROWN, ("a1", "b2"), ("a1", "b3"))
    with pytest.raises(SpecialError):
        primed_maps(SpecialSpec(phis, "p1", (0, 0)))
    with pytest.raises(SpecialError):
        primed_maps(SpecialSpec(phis, "zz", (1, 0)))
    w = maps(wedge(), C3, ("p0", "p0", "p1"))
    with pytest.raises(SpecialError, match="rooted"):
        primed_maps(SpecialSpec(w, "c", (0,)))


def test_identity_permutation_gives_zero():
    phis = maps(C2, CROWN, ("a1", "b2"), ("a2", "b3"))
    assert make_special(SpecialSpec(phis, "p1", (0, 1))).is_zero


def test_cycles_of():
    assert cycles_of((1, 2, 0, 3)) == [[0, 1, 2]]
    assert cycles_of((1, 0, 3, 2)) == [[0, 1], [2, 3]]
    assert cycles_of((0, 1)) == []


def test_cyclic_parts():
    phis = maps(C3, chain(3, prefix="q"), ("q0", "q0", "q0"), ("q0", "q1", "q1"),
                ("q0", "q2", "q2"), ("q1", "q1", "q2"))
    spec = SpecialSpec(phis, "p1", (1, 0, 2, 3))
    comb = cyclic_decompose(spec)
    assert comb.verify() and comb.is_path()
    for t in comb.terms:
        assert len(cycles_of(cycle_form(t.spec).perm)) == 1


def test_not_in_ideal():
    a = MonomialOfMaps(maps(C2, CROWN, ("a1", "b2")))
    b = MonomialOfMaps(maps(C2, CROWN, ("a1", "b3")))
    with pytest.raises(NotInIdeal):
        special_combination(Binomial(a, b))


def test_zero_binomial_has_empty_decomposition():
    a = MonomialOfMaps(maps(C2, CROWN, ("a1", "b2"), ("a2", "b3")))
    for target in ("special", "squarefree", "quadratic"):
        assert decompose(Binomial(a, a), target).terms == []


def test_hexagon_decompositions():
    f = hexagon()
    c = special_combination(f)
    assert c.verify("special") and len(c.terms) == 1
    c = squarefree_decompose(f)
    assert c.verify("squarefree")
    with pytest.raises(ChordlessCycleError) as e:
        quadratic_decompose(f)
    assert len(e.value.cycle) == 6


def test_hexagon_with_chord_is_quadratic():
    f = Binomial(MonomialOfMaps(maps(C2, CROWN_CHORD, ("a1", "b2"), ("a2", "b3"), ("a3", "b1"))),
                 MonomialOfMaps(maps(C2, CROWN_CHORD, ("a1", "b3"), ("a2", "b1"), ("a3", "b2"))))
    c = quadratic_decompose(f)
    assert c.verify("quadratic") and c.is_path()
    assert all(t.part.degree == 2 for t in c.terms)


def test_combination_catches_bad_terms():
    f = hexagon()
    good = special_combination(f)
    broken = Combination(f, good.terms + good.terms)
    assert not broken.verify()
    assert "formal sum differs from the target" in broken.failures()
    bad_shape = Combination(f, [Term(ONE, f, "quadratic")])
    assert any("not quadratic" in x for x in bad_shape.failures())


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(SOURCES), posets(min_size=2, max_size=5, prefix="q"), st.integers(2, 4),
       st.randoms(use_true_random=False))
def test_random_decompositions(P, Q, d, rnd):
    f = random_binomial(random.Random(rnd.random()), P, Q, d, attempts=50)
    if f is None:
        return
    assert in_ideal(f)
    targets = ("special", "squarefree", "quadratic") if is_connected(P) else ("squarefree", "quadratic")
    for target in targets:
        c = decompose(f, target)
        assert c.failures(target) == []
        assert c.is_path()
        assert all(in_ideal(t.part) for t in c.terms)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SOURCES), st.sampled_from([CROWN, CROWN_CHORD]), st.integers(2, 4),
       st.randoms(use_true_random=False))
def test_random_decompositions_crowns(P, Q, d, rnd):
    f = random_binomial(random.Random(rnd.random()), P, Q, d, attempts=50)
    if f is None:
        return
    for target in ("special", "squarefree") if is_connected(P) else ("squarefree",):
        c = decompose(f, target)
        assert c.verify(target) and c.is_path()
    try:
        c = quadratic_decompose(f)
    except ChordlessCycleError as e:
        assert Q is CROWN
        assert [x.seq for x in chordless_proper_cycles(Q, 6)]
        assert len(e.cycle) >= 6
    else:
        assert c.verify("quadratic") and c.is_path()


def test_special_data_for_co_rooted_source():
    W = wedge()
    Q = chain(3, prefix="q")
    f = Binomial(MonomialOfMaps(maps(W, Q, ("q0", "q1", "q1"), ("q1", "q0", "q2"))),
                 MonomialOfMaps(maps(W, Q, ("q1", "q0", "q1"), ("q0", "q1", "q2"))))
    assert in_ideal(f)
    specs = decompose_to_special(f)
    assert specs and all(s.dual for s in specs)
    assert special_combination(f).verify("special")


def test_unknown_target():
    with pytest.raises(ValueError):
        decompose(hexagon(), "cubic")


def test_special_needs_connected_source():
    P = poset_sum(C2, antichain(1, prefix="x"))
    f = random_binomial(random.Random(0), P, chain(3, prefix="q"), 2)
    with pytest.raises(PosetError):
        decompose_to_special(f)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([C2, C3, vee(), wedge()]), posets(min_size=2, max_size=4, prefix="q"), st.data())
def test_special_round_trip(P, Q, data):
    from isotonian.homs import enumerate_hom
    H = enumerate_hom(P, Q)
    d = data.draw(st.integers(1, 4))
    phis = tuple(data.draw(st.lists(st.sampled_from(H), min_size=d, max_size=d)))
    pivot = data.draw(st.sampled_from(P.elements))
    perm = tuple(data.draw(st.permutations(range(d))))
    # the wedge is co-rooted, so its special binomials modify down-sets
    spec = SpecialSpec(phis, pivot, perm, dual=(P == wedge()))
    try:
        f = make_special(spec)
    except (SpecialError, PosetError):
        return
    assert in_ideal(f)
    if f.is_zero:
        return
    total = special_combination(f)
    assert total.verify("special") and total.is_path()
