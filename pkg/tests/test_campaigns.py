import json

import pytest

from isotonian import campaigns
from isotonian.poset import antichain, chain, crown


def test_six_element_targets():
    # beyond the acceptance bound: crown3 is the only 6-element poset with a
    # chordless proper cycle, and the fiber check must single it out
    res = campaigns.theorem_campaign("chain2", max_q_size=6, max_degree=4)
    assert res["targets"] == 405
    assert res["mismatches"] == 0 and res["inconclusive"] == 0
    (row,) = [r for r in res["rows"] if not r["predicted_quadratic"]]
    assert row["quadratic_up_to_D"] is False and row["min_gen_degree_up_to_D"] == 3
    assert res["squarefree_failures"] == 0


@pytest.mark.slow
def test_rooted_small_family():
    res = campaigns.theorem_campaign("rooted-small", max_q_size=5, max_degree=4, threads=2)
    assert res["instances"] == 4 * 87 and res["mismatches"] == 0 and res["inconclusive"] == 0


def test_family_validation():
    with pytest.raises(ValueError):
        campaigns.theorem_campaign([antichain(2)], targets=[chain(2)])
    with pytest.raises(ValueError):
        campaigns.p_family("chain2,nosuch")
    assert [P.name for P in campaigns.p_family("vee,chain4")] == ["vee", "chain4"]


def test_parallel_matches_serial():
    targets = [crown(3), chain(3, prefix="q")]
    a = campaigns.theorem_campaign("rooted-small", targets=targets, max_degree=3)
    b = campaigns.theorem_campaign("rooted-small", targets=targets, max_degree=3, threads=3)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_random_campaign_seeds():
    a = campaigns.random_campaign(1, count=10)
    b = campaigns.random_campaign(1, count=10)
    c = campaigns.random_campaign(2, count=10)
    assert a == b and a != c
    assert a["failures"] == 0
