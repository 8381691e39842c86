import json
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isotonian import kernels
from isotonian.homs import hom_set
from isotonian.poset import chain, crown

from strategies import posets

py = kernels.load("python")
try:
    cy = kernels.load("cython")
except ImportError:  # extension not built
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


def table_args(P, Q):
    linext = P.linear_extension
    pos = {i: k for k, i in enumerate(linext)}
    lower = [tuple(pos[j] for j in P.lower_cover_indices(i)) for i in linext]
    return len(P), lower, [Q.up_mask(q) for q in range(len(Q))], len(Q)


def test_backend_name():
    assert kernels.BACKEND in ("python", "cython")


@needs_ext
@settings(max_examples=100, deadline=None)
@given(posets(max_size=5, prefix="p"), posets(max_size=6, prefix="q"))
def test_hom_table_agrees(P, Q):
    args = table_args(P, Q)
    assert [tuple(r) for r in cy.hom_table(*args)] == [tuple(r) for r in py.hom_table(*args)]


@needs_ext
@settings(max_examples=60, deadline=None)
@given(posets(max_size=3, prefix="p"), posets(min_size=2, max_size=5, prefix="q"), st.integers(1, 3))
def test_group_fibers_agree(P, Q, d):
    hs = hom_set(P, Q)
    a = py.group_fibers(hs.table, len(Q), d, 10 ** 6)
    b = cy.group_fibers(hs.table, len(Q), d, 10 ** 6)
    assert {k: sorted(map(tuple, v)) for k, v in a.items()} == {k: sorted(map(tuple, v)) for k, v in b.items()}
    for members in a.values():
        if len(members) > 1:
            assert py.fiber_profile(members, d) == cy.fiber_profile(members, d)


@needs_ext
@settings(max_examples=60, deadline=None)
@given(posets(max_size=3, prefix="p"), posets(min_size=2, max_size=5, prefix="q"), st.integers(1, 3), st.data())
def test_fiber_members_agree(P, Q, d, data):
    hs = hom_set(P, Q)
    mono = tuple(sorted(data.draw(st.lists(st.integers(0, len(hs) - 1), min_size=d, max_size=d))))
    key = py.multidegree_key(hs.table, mono)
    n_q = len(Q)
    counts = [0] * (len(P) * n_q)
    for k, qs in enumerate(key):
        for q in qs:
            counts[k * n_q + q] += 1
    a = [tuple(x) for x in py.fiber_members(hs.table, n_q, counts, d)]
    b = [tuple(x) for x in cy.fiber_members(hs.table, n_q, counts, d)]
    assert a == b and mono in a


def test_group_fibers_cap():
    hs = hom_set(chain(2), crown(3))
    assert py.group_fibers(hs.table, 6, 3, 10) is None
    if cy is not None:
        assert cy.group_fibers(hs.table, 6, 3, 10) is None


def test_crown_profile():
    hs = hom_set(chain(2), crown(3))
    groups = py.group_fibers(hs.table, 6, 3, 10 ** 6)
    (members,) = [v for v in groups.values() if len(v) > 1]
    assert py.fiber_profile(members, 3) == (3, True)


def test_pure_python_switch():
    code = ("import json; from isotonian import kernels; from isotonian.toric import generation_report;"
            "from isotonian.poset import chain, crown;"
            "r = generation_report(chain(2), crown(3), 3);"
            "print(json.dumps([kernels.BACKEND, r.as_dict()], sort_keys=True))")
    env = dict(os.environ, ISOTONIAN_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, report = json.loads(out.stdout)
    assert backend == "python"
    from isotonian.toric import generation_report
    assert report == json.loads(json.dumps(generation_report(chain(2), crown(3), 3).as_dict()))
