from pathlib import Path

import pytest

from isotonian.poset import chain, crown
from isotonian.posetfile import (PosetSyntaxError, builtin, format_poset, parse_posets,
                                 read_posets, zigzag)

DATA = Path(__file__).resolve().parents[1] / "src" / "isotonian" / "data" / "examples.poset"


def test_singleton():
    (P,) = parse_posets("poset P\nelements: a\ncovers:").values()
    assert P.elements == ("a",) and P.covers == ()


def test_crown_file_matches_construction():
    posets = read_posets(DATA)
    assert posets["crown3"] == crown(3)
    assert len(posets["crown3"].covers) == 6
    assert posets["zigzag5"] == zigzag(5)


def test_repeated_lines_accumulate():
    (P,) = parse_posets("poset P\nelements: a b\nelements: c\ncovers: a<b\ncovers: b<c\n").values()
    assert P == chain(3, prefix="x").relabel({"x0": "a", "x1": "b", "x2": "c"})


def test_comments_and_blank_lines():
    text = "# header\n\nposet P  # trailing\nelements: a b # two\ncovers: a<b\n"
    assert parse_posets(text)["P"].leq("a", "b")


@pytest.mark.parametrize("text, msg, line", [
    ("poset P\nelements: a\ncovers: a<a", "cycle", 3),
    ("poset P\nelements: a b\ncovers: a<b b<a", "cycle", 1),
    ("poset P\nelements: a\ncovers: a<z", "unknown element", 3),
    ("poset P\nelements: a a", "duplicate element", 2),
    ("poset P\nelements: a\nposet P\nelements: b", "duplicate poset name", 3),
    ("elements: a", "before any", 1),
    ("poset P\nelements: a b\ncovers: a-b", "bad cover", 3),
    ("poset P\nrelations: a<b", "expected", 2),
    ("poset\n", "expected 'poset <name>'", 1),
])
def test_errors(text, msg, line):
    with pytest.raises(PosetSyntaxError, match=msg) as e:
        parse_posets(text, source="t.poset")
    assert e.value.line == line
    assert str(e.value).startswith(f"t.poset:{line}:")


def test_column_points_at_token():
    with pytest.raises(PosetSyntaxError) as e:
        parse_posets("poset P\nelements: a b\ncovers: a<b a<zz")
    assert e.value.column == 13


def test_format_round_trip():
    for name in ("crown3", "vee", "diamond", "chain4", "zigzag4", "crown3chord"):
        P = builtin(name)
        (R,) = parse_posets(format_poset(P)).values()
        assert R == P


def test_builtins():
    assert builtin("chain2") == chain(2)
    assert builtin("crown2") is None
    assert builtin("nope") is None
    assert len(builtin("antichain4")) == 4
    assert builtin("crown3chord").leq("a1", "b1")
