from math import comb

import pytest
from hypothesis import given, settings

from isotonian.homs import (IsotoneMap, MapConditionError, count_hom, enumerate_hom, join_maps,
                            modify_map, monomial_image, parse_map)
from isotonian.poset import PosetError, antichain, chain, crown, poset_sum, vee, wedge

import oracles
from strategies import posets


@pytest.mark.parametrize("a", range(1, 6))
@pytest.mark.parametrize("b", range(1, 6))
def test_chain_to_chain_count(a, b):
    # multisets of size a from b values
    assert count_hom(chain(a), chain(b, prefix="q")) == comb(a + b - 1, a)


def test_small_counts():
    assert count_hom(chain(2), chain(2, prefix="q")) == 3
    assert count_hom(chain(2), crown(3)) == 12
    assert count_hom(antichain(2), crown(3)) == 36


@settings(max_examples=80, deadline=None)
@given(posets(max_size=4, prefix="p"), posets(max_size=4, prefix="q"))
def test_enumeration_matches_brute_force(P, Q):
    got = sorted(tuple(sorted(phi.as_dict().items())) for phi in enumerate_hom(P, Q))
    want = sorted(tuple(sorted(f.items())) for f in oracles.homs(P, Q))
    assert got == want


@settings(max_examples=60, deadline=None)
@given(posets(max_size=5, prefix="p"))
def test_maps_to_two_chain_are_up_sets(P):
    assert count_hom(P, chain(2, prefix="q")) == oracles.up_sets(P)


@settings(max_examples=60, deadline=None)
@given(posets(max_size=3, prefix="p"), posets(max_size=3, prefix="r"), posets(max_size=3, prefix="q"))
def test_sum_is_product(A, B, Q):
    assert count_hom(poset_sum(A, B), Q) == count_hom(A, Q) * count_hom(B, Q)


def test_enumeration_is_sorted_and_unique():
    H = enumerate_hom(vee(), crown(3))
    assert H == sorted(H)
    assert len(set(H)) == len(H)


def test_serialize_round_trip():
    P, Q = chain(2), crown(3)
    for phi in enumerate_hom(P, Q):
        assert parse_map(P, Q, phi.serialize()) == phi


def test_rejects_non_isotone():
    with pytest.raises(PosetError, match="order preserving"):
        IsotoneMap.from_assignment(chain(2), crown(3), {"p0": "b1", "p1": "a1"})
    with pytest.raises(PosetError):
        parse_map(chain(2), crown(3), "p0->a1")


def test_join_and_restrict():
    P = poset_sum(chain(2), vee())
    Q = chain(3, prefix="q")
    phi = IsotoneMap.from_assignment(P, Q, {"p0": "q0", "p1": "q2", "a": "q1", "b": "q1", "c": "q2"})
    parts = [phi.restrict(P.induced(["p0", "p1"])), phi.restrict(P.induced(["a", "b", "c"]))]
    assert join_maps(P, parts) == phi


def test_dual_map():
    phi = IsotoneMap.from_assignment(vee(), crown(3), {"a": "a1", "b": "b2", "c": "b3"})
    d = phi.dual()
    assert d.source == vee().dual() and d.as_dict() == phi.as_dict()


def test_monomial_image():
    phi = IsotoneMap.from_assignment(chain(2), crown(3), {"p0": "a1", "p1": "b2"})
    assert monomial_image(phi).exponents == (("p0", "a1"), ("p1", "b2"))


class TestModify:
    Q = chain(3, prefix="q")

    def phi(self):
        return IsotoneMap.from_assignment(vee(), self.Q, {"a": "q1", "b": "q1", "c": "q2"})

    def test_valid(self):
        psi = modify_map(self.phi(), "b", {"b": "q2"})
        assert psi.as_dict() == {"a": "q1", "b": "q2", "c": "q2"}

    def test_whole_poset(self):
        psi = modify_map(self.phi(), "a", {"a": "q0", "b": "q0", "c": "q0"})
        assert set(psi.as_dict().values()) == {"q0"}

    def test_domain(self):
        with pytest.raises(MapConditionError) as e:
            modify_map(self.phi(), "a", {"a": "q0"})
        assert e.value.condition == "domain"

    def test_isotone_on_up_set(self):
        with pytest.raises(MapConditionError) as e:
            modify_map(self.phi(), "a", {"a": "q2", "b": "q0", "c": "q2"})
        assert e.value.condition == "isotone"

    def test_lower_cover(self):
        with pytest.raises(MapConditionError) as e:
            modify_map(self.phi(), "b", {"b": "q0"})
        assert e.value.condition == "lower-cover"

    def test_needs_rooted(self):
        phi = IsotoneMap.from_assignment(wedge(), self.Q, {"a": "q0", "b": "q0", "c": "q1"})
        with pytest.raises(PosetError, match="rooted"):
            modify_map(phi, "c", {"c": "q2"})
