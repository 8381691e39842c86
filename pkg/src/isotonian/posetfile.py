"""Reading and writing the plain-text poset format.

    # comment
    poset crown3
    elements: a1 a2 a3 b1 b2 b3
    covers: a1<b2 a1<b3 a2<b1 a2<b3 a3<b1 a3<b2

``elements:`` and ``covers:`` lines may repeat and accumulate; an empty
``covers:`` line is allowed.
"""

from __future__ import annotations

import re
from pathlib import Path

from isotonian.poset import (Poset, PosetError, antichain, butterfly, chain, crown, diamond, vee,
                             wedge, with_relations)


class PosetSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1, source: str = "<text>"):
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.line = line
        self.column = column


_NAME = re.compile(r"^[A-Za-z0-9_.+\-^']+$")


def parse_posets(text: str, source: str = "<text>") -> dict:
    """All posets declared in ``text``, by name, in declaration order."""
    blocks = []  # [name, line, elements[(label, line, col)], covers[(a, b, line, col)]]
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        col0 = len(line) - len(line.lstrip()) + 1
        stripped = line.strip()
        if stripped.startswith("poset"):
            parts = stripped.split()
            if parts[0] != "poset" or len(parts) != 2:
                raise PosetSyntaxError("expected 'poset <name>'", lineno, col0, source)
            name = parts[1]
            if not _NAME.match(name):
                raise PosetSyntaxError(f"bad poset name {name!r}", lineno, col0 + 6, source)
            if any(b[0] == name for b in blocks):
                raise PosetSyntaxError(f"duplicate poset name {name!r}", lineno, col0 + 6, source)
            blocks.append([name, lineno, [], []])
            continue
        head, sep, rest = stripped.partition(":")
        if not sep or head.strip() not in ("elements", "covers"):
            raise PosetSyntaxError("expected 'poset', 'elements:' or 'covers:'", lineno, col0, source)
        if not blocks:
            raise PosetSyntaxError(f"'{head.strip()}:' before any 'poset' line", lineno, col0, source)
        block = blocks[-1]
        offset = line.index(":") + 2
        for m in re.finditer(r"\S+", line[offset - 1:]):
            tok, col = m.group(), offset + m.start()
            if head.strip() == "elements":
                block[2].append((tok, lineno, col))
                continue
            if tok.count("<") != 1:
                raise PosetSyntaxError(f"bad cover {tok!r}, expected a<b", lineno, col, source)
            a, b = tok.split("<")
            if not a or not b:
                raise PosetSyntaxError(f"bad cover {tok!r}, expected a<b", lineno, col, source)
            block[3].append((a, b, lineno, col))

    out = {}
    for name, lineno, elements, covers in blocks:
        labels = []
        seen = set()
        for label, ln, col in elements:
            if label in seen:
                raise PosetSyntaxError(f"duplicate element {label!r} in poset {name}", ln, col, source)
            seen.add(label)
            labels.append(label)
        for a, b, ln, col in covers:
            if a == b:
                raise PosetSyntaxError(f"cycle: {a}<{b} in poset {name}", ln, col, source)
            for x in (a, b):
                if x not in seen:
                    raise PosetSyntaxError(f"unknown element {x!r} in poset {name}", ln, col, source)
        try:
            out[name] = Poset(labels, [(a, b) for a, b, _, _ in covers], name=name)
        except PosetError as e:
            raise PosetSyntaxError(f"{e} in poset {name}", lineno, 1, source) from None
    return out


def read_posets(path) -> dict:
    path = Path(path)
    return parse_posets(path.read_text(), source=str(path))


def format_poset(P: Poset, name: str | None = None) -> str:
    name = name or P.name or "P"
    covers = " ".join(f"{a}<{b}" for a, b in P.covers)
    return f"poset {name}\nelements: {' '.join(P.elements)}\ncovers: {covers}\n".replace(": \n", ":\n")


def zigzag(m: int, name: str | None = None) -> Poset:
    """The 2m-element poset whose Hasse diagram is one cycle:
    a_i < b_i and a_{i+1} < b_i (indices mod m)."""
    a = [f"a{i}" for i in range(1, m + 1)]
    b = [f"b{i}" for i in range(1, m + 1)]
    covers = [(a[i], b[i]) for i in range(m)] + [(a[(i + 1) % m], b[i]) for i in range(m)]
    return Poset(a + b, covers, name=name or f"zigzag{m}")


def builtin(name: str) -> Poset | None:
    """Named families usable on the command line without a poset file."""
    m = re.fullmatch(r"(chain|antichain|crown|zigzag)(\d+)", name)
    if m:
        kind, n = m.group(1), int(m.group(2))
        if n < 1:
            return None
        if kind == "chain":
            return chain(n, name=name)
        if kind == "antichain":
            return antichain(n, name=name)
        if kind == "crown":
            return crown(n, name=name) if n >= 3 else None
        return zigzag(n, name=name) if n >= 2 else None
    if name == "point":
        return antichain(1, name=name)
    if name == "vee":
        return vee()
    if name in ("wedge", "lambda"):
        return wedge(name)
    if name == "diamond":
        return diamond()
    if name == "butterfly":
        return butterfly()
    if name == "crown3chord":
        return with_relations(crown(3), [("a1", "b1")], name=name)
    return None


BUILTIN_NAMES = ("chainN", "antichainN", "crownN (N>=3)", "zigzagN", "point", "vee",
                 "wedge/lambda", "diamond", "butterfly", "crown3chord")
