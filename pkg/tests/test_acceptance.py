"""Acceptance suite: one PASS/FAIL line per criterion.

Each criterion builds a JSON-serializable report, prints its verdict line and
then asserts.  Criterion 8 recomputes the others and compares bytes.
"""

import json
import random
from math import comb

import pytest

from isotonian import campaigns
from isotonian.cycles import chordless_proper_cycles
from isotonian.generate import all_posets, posets_up_to
from isotonian.homs import count_hom
from isotonian.poset import chain, crown, is_rooted, with_relations
from isotonian.toric import generation_report

import oracles

SEED_RANDOM = 20240607
SEED_SUMS = 7
C2 = chain(2, name="chain2")
TWO = chain(2, prefix="q", name="C2")
CROWN = crown(3, name="crown3")
CROWN_CHORD = with_relations(crown(3), [("a1", "b1")], name="crown3chord")

reports = {}


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
        return ok
    return emit


def _dump(obj):
    return json.dumps(obj, sort_keys=True)


# -- computations -------------------------------------------------------------

def criterion_1():
    res = campaigns.theorem_campaign("chain2", max_q_size=5, max_degree=4, max_len=10)
    res["size5_representatives"] = len(all_posets(5))
    return res


def criterion_2():
    rep = generation_report(C2, CROWN, 4)
    cyc = chordless_proper_cycles(CROWN, 10)
    rep_chord = generation_report(C2, CROWN_CHORD, 4)
    return {
        "crown": rep.as_dict(),
        "crown_verdict": rep.verdict("quadratic"),
        "crown_cycles": [list(c.seq) for c in cyc],
        "chord_verdict": rep_chord.verdict("quadratic"),
        "chord_min_gen_degree": rep_chord.min_gen_degree,
    }


def rooted_sources(n=5):
    return [P for P in posets_up_to(n, prefix="p") if is_rooted(P)]


def criterion_3():
    rows = []
    for P in rooted_sources():
        rep = generation_report(P, TWO, 4)
        rows.append({
            "P": campaigns.poset_dict(P),
            "quadratic": rep.verdict("quadratic"),
            "hom": rep.hom_size,
            "up_sets": oracles.up_sets(P),
        })
    return {"rows": rows}


def criterion_4():
    # independent check on the brute-force degree-2 fibers of every instance
    # from criteria 1-3
    pairs = [(C2, Q) for Q in posets_up_to(5)] + [(C2, CROWN), (C2, CROWN_CHORD)]
    pairs += [(P, TWO) for P in rooted_sources()]
    exceptions = []
    for P, Q in pairs:
        _, fibs = oracles.fibers(P, Q, 2)
        for members in fibs:
            if len(members) > 1 and any(m[0] == m[1] for m in members):
                exceptions.append({"P": campaigns.poset_dict(P), "Q": campaigns.poset_dict(Q)})
                break
        if not generation_report(P, Q, 2).squares_isolated:
            exceptions.append({"P": campaigns.poset_dict(P), "Q": campaigns.poset_dict(Q), "by": "report"})
    return {"instances": len(pairs), "exceptions": exceptions}


def criterion_5():
    return campaigns.random_campaign(SEED_RANDOM, count=200, max_degree=4,
                                     p_names=("chain2", "chain3", "vee"),
                                     q_names=("chain3", "crown3", "crown3chord"))


def criterion_6():
    chains = []
    for a in range(2, 6):
        for b in range(2, 6):
            chains.append({"a": a, "b": b, "count": count_hom(chain(a), chain(b, prefix="q")),
                           "formula": comb(a + b - 1, a)})
    return {"chains": chains, "sums": campaigns.hom_product_campaign(SEED_SUMS, 20)}


def criterion_7():
    return campaigns.nonproper_chord_campaign(posets_up_to(5) + [CROWN, CROWN_CHORD], (6, 8, 10))


COMPUTE = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
           5: criterion_5, 6: criterion_6, 7: criterion_7}


def get(n):
    if n not in reports:
        reports[n] = COMPUTE[n]()
    return reports[n]


# -- criteria -----------------------------------------------------------------

def test_criterion_1_chord_condition_equivalence(verdict):
    r = get(1)
    ok = (r["mismatches"] == 0 and r["inconclusive"] == 0 and r["targets"] == 87
          and r["size5_representatives"] == 63 and r["squarefree_failures"] == 0)
    verdict(1, ok, f"P=C2, {r['targets']} posets Q with <=5 elements ({r['size5_representatives']} of size 5), "
                   f"D=4: {r['mismatches']} mismatches, {r['inconclusive']} inconclusive")
    assert ok


def test_criterion_2_crown_witness(verdict):
    r = get(2)
    crown_rep = r["crown"]
    w = crown_rep["witnesses"].get("quadratic", {})
    ok = (r["crown_verdict"] is False and w.get("degree") == 3
          and crown_rep["verdicts"]["min_gen_degree_up_to_D"] == 3
          and len(r["crown_cycles"]) == 1 and len(r["crown_cycles"][0]) == 6
          and r["chord_verdict"] is True)
    verdict(2, ok, f"crown3: quadratic={r['crown_verdict']}, witness degree {w.get('degree')}, "
                   f"min_gen_degree={crown_rep['verdicts']['min_gen_degree_up_to_D']}, "
                   f"{len(r['crown_cycles'])} chordless cycle(s); with a1<b1: quadratic={r['chord_verdict']}")
    assert ok


def test_criterion_3_hibi_case(verdict):
    rows = get(3)["rows"]
    bad = [r for r in rows if r["quadratic"] is not True or r["hom"] != r["up_sets"]]
    ok = not bad and len(rows) == 1 + 1 + 2 + 4 + 9
    verdict(3, ok, f"{len(rows)} rooted P with <=5 elements, Q=C2: {len(bad)} failures")
    assert ok


def test_criterion_4_squares_isolated(verdict):
    r = get(4)
    ok = not r["exceptions"]
    verdict(4, ok, f"{r['instances']} instances: {len(r['exceptions'])} degree-2 fibers with a square and another member")
    assert ok


def test_criterion_5_decomposition_certificates(verdict):
    r = get(5)
    rows = r["rows"]
    required_quad = sum(1 for x in rows if r["chord_condition"][x["Q"]])
    ok = r["failures"] == 0 and len(rows) == 200
    verdict(5, ok, f"{len(rows)} random binomials (seed {SEED_RANDOM}): {r['failures']} failures; "
                   f"quadratic required on {required_quad}, blocked by a chordless cycle on {r['blocked']}")
    assert ok


def test_criterion_6_counting(verdict):
    r = get(6)
    bad_chains = [x for x in r["chains"] if x["count"] != x["formula"]]
    sums = r["sums"]
    ok = not bad_chains and sums["failures"] == 0 and sums["count"] == 20
    verdict(6, ok, f"{len(r['chains'])} chain counts, {len(bad_chains)} wrong; "
                   f"{sums['count']} sum instances (seed {SEED_SUMS}), {sums['failures']} wrong")
    assert ok


def test_criterion_7_nonproper_cycles_have_chords(verdict):
    r = get(7)
    ok = not r["failures"] and r["non_proper_cycles_checked"] > 0
    verdict(7, ok, f"{r['non_proper_cycles_checked']} non-proper cycles of length 6-10 in {r['posets']} posets: "
                   f"{len(r['failures'])} without a chord")
    assert ok


def test_criterion_8_determinism(verdict):
    first = {n: _dump(get(n)) for n in COMPUTE}
    random.seed(12345)  # global state must not matter
    second = {n: _dump(COMPUTE[n]()) for n in COMPUTE}
    differ = [n for n in COMPUTE if first[n] != second[n]]
    ok = not differ
    verdict(8, ok, f"criteria 1-7 recomputed: {len(differ)} reports differ"
                   + (f" ({differ})" if differ else ""))
    assert ok
