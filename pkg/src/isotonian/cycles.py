"""Poset cycles q1 <= q2 >= q3 <= ... <= q2m >= q1, properness and chords.

Positions are 1-based and taken modulo 2m (position 0 is position 2m).
"""

from __future__ import annotations

from dataclasses import dataclass

from isotonian.homs import IsotoneMap, join_maps
from isotonian.poset import Poset, PosetError, connected_components, is_co_rooted, is_rooted
from isotonian.toric import Binomial, MonomialOfMaps, in_ideal

DEFAULT_MAX_LEN = 10


class CycleError(ValueError):
    pass


def is_cycle(Q: Poset, seq) -> bool:
    n = len(seq)
    if n % 2:
        raise CycleError(f"poset cycles have even length, got {n}")
    if n == 0:
        return False
    for k in range(n):
        a, b = seq[k], seq[(k + 1) % n]
        # 0-based even k is an odd position, which sits below its successor
        if not (Q.leq(a, b) if k % 2 == 0 else Q.leq(b, a)):
            return False
    return True


@dataclass(frozen=True)
class PosetCycle:
    parent: Poset
    seq: tuple

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(self.seq))
        if len(self.seq) < 4:
            raise CycleError("poset cycles have length at least 4")
        if not is_cycle(self.parent, self.seq):
            raise CycleError("not a poset cycle: " + " ".join(self.seq))

    def __len__(self):
        return len(self.seq)

    def q(self, i: int) -> str:
        """Element at 1-based position ``i`` (taken mod 2m)."""
        return self.seq[(i - 1) % len(self.seq)]

    def rotated(self, shift: int) -> "PosetCycle":
        """Start at position ``1 + 2*shift``."""
        k = (2 * shift) % len(self.seq)
        return PosetCycle(self.parent, self.seq[k:] + self.seq[:k])

    def serialize(self) -> dict:
        return {
            "length": len(self.seq),
            "elements": list(self.seq),
            "proper": is_proper(self),
            "chord": find_chord(self) if len(self.seq) >= 6 else None,
        }


def is_proper(c: PosetCycle) -> bool:
    seq, Q = c.seq, c.parent
    if len(set(seq)) != len(seq):
        return False
    for parity in (0, 1):
        same = seq[parity::2]
        for x in range(len(same)):
            for y in range(x + 1, len(same)):
                if Q.comparable(same[x], same[y]):
                    return False
    return True


def find_chord(c: PosetCycle):
    """Least ``(i, j)``, i odd, j even, j not next to i, with q_i <= q_j."""
    n = len(c.seq)
    if n < 6:
        raise CycleError("chords are defined for cycles of length >= 6")
    Q = c.parent
    for i in range(1, n, 2):
        for j in range(2, n + 1, 2):
            if j == i + 1 or j == (i - 1 if i > 1 else n):
                continue
            if Q.leq(c.q(i), c.q(j)):
                return (i, j)
    return None


def canonical(seq) -> tuple:
    """Lexicographically least rotation (by an even shift) or reflection."""
    seq = tuple(seq)
    n = len(seq)
    rev = (seq[0],) + tuple(reversed(seq[1:]))
    return min(s[k:] + s[:k] for s in (seq, rev) for k in range(0, n, 2))


def _leq_table(Q: Poset):
    n = len(Q)
    return [[Q.leq_index(a, b) for b in range(n)] for a in range(n)]


def chordless_proper_cycles(Q: Poset, max_len: int = DEFAULT_MAX_LEN, min_len: int = 6) -> list:
    """Chordless proper cycles of length min_len..max_len, one canonical
    representative per rotation/reflection class."""
    if max_len % 2 or max_len < 6:
        raise CycleError("max_len must be even and at least 6")
    return _proper_search(Q, max_len, max(6, min_len), chordless=True)


def proper_cycles(Q: Poset, max_len: int = DEFAULT_MAX_LEN, min_len: int = 4) -> list:
    """All proper cycles of length min_len..max_len, canonical representatives."""
    if max_len % 2:
        raise CycleError("max_len must be even")
    return _proper_search(Q, max_len, max(4, min_len), chordless=False)


def _proper_search(Q: Poset, max_len: int, min_len: int, chordless: bool) -> list:
    # q1 is the least odd element and q2 < q2m, which picks the canonical
    # representative directly
    leq = _leq_table(Q)
    n = len(Q)
    out = []
    for L in range(min_len + min_len % 2, max_len + 1, 2):
        if L > n:
            break
        seq = [0] * L

        def extend(k, used):
            # k: 0-based slot to fill; slot k holds position k + 1
            if k == L:
                if leq[seq[0]][seq[L - 1]] and seq[1] < seq[L - 1]:
                    out.append(PosetCycle(Q, tuple(Q.elements[x] for x in seq)))
                return
            prev = seq[k - 1]
            for x in range(seq[0] + 1 if k % 2 == 0 else 0, n):
                if x in used:
                    continue
                if k % 2 == 0:
                    # odd position, below its predecessor, above nothing yet
                    if not leq[x][prev]:
                        continue
                    if any(leq[x][seq[j]] or leq[seq[j]][x] for j in range(0, k, 2)):
                        continue
                    # chord x <= q_j for an earlier even position not adjacent
                    if chordless and any(leq[x][seq[j]] for j in range(1, k - 1, 2)):
                        continue
                else:
                    if not leq[prev][x]:
                        continue
                    if any(leq[x][seq[j]] or leq[seq[j]][x] for j in range(1, k, 2)):
                        continue
                    first = 2 if k == L - 1 else 0
                    if chordless and any(leq[seq[i]][x] for i in range(first, k - 1, 2)):
                        continue
                seq[k] = x
                used.add(x)
                extend(k + 1, used)
                used.discard(x)

        for x0 in range(n):
            seq[0] = x0
            extend(1, {x0})
    return out


def poset_cycles(Q: Poset, length: int, rotation_reps: bool = False):
    """Every poset cycle of the given length (repetitions allowed), as tuples.

    With ``rotation_reps`` only cycles whose first entry is least (by label)
    among the odd positions are produced; every cycle is an even rotation of
    one of these.
    """
    if length % 2 or length < 4:
        raise CycleError("length must be even and at least 4")
    leq = _leq_table(Q)
    n = len(Q)
    up = [[b for b in range(n) if leq[a][b]] for a in range(n)]
    down = [[a for a in range(n) if leq[a][b]] for b in range(n)]
    labels = Q.elements
    seq = [0] * length

    def rec(k):
        if k == length:
            if leq[seq[0]][seq[-1]]:
                yield tuple(labels[x] for x in seq)
            return
        for x in (up[seq[k - 1]] if k % 2 else down[seq[k - 1]]):
            if rotation_reps and k % 2 == 0 and x < seq[0]:
                continue
            seq[k] = x
            yield from rec(k + 1)

    for x0 in range(n):
        seq[0] = x0
        yield from rec(1)


def special_pivot(P: Poset):
    """The element p with up-set P minus the minimum, if there is one."""
    (root,) = P.minimal_elements()
    rest = set(P.elements) - {root}
    for p in P.upper_covers(root):
        if P.up_set(p) == rest:
            return p
    return None


def nonquadratic_witness(P: Poset, c: PosetCycle) -> Binomial:
    """Degree-m binomial in J(P,Q) built from a chordless proper 2m-cycle.

    phi_i sends the minimum of P to q_{2i-1} and everything else to q_{2i};
    psi_i does the same with q_{2i-2} (q_0 = q_2m) in place of q_{2i}.
    """
    Q = c.parent
    if not is_rooted(P):
        raise PosetError("witness construction needs a rooted P")
    if len(P) < 2:
        raise PosetError("witness construction needs P with at least two elements")
    m = len(c.seq) // 2
    if m < 3:
        raise CycleError("witness needs a cycle of length >= 6")
    if not is_proper(c):
        raise CycleError("cycle is not proper")
    if find_chord(c) is not None:
        raise CycleError(f"cycle has a chord {find_chord(c)}")
    (root,) = P.minimal_elements()

    def make(low, high):
        return IsotoneMap.from_assignment(P, Q, {p: (low if p == root else high) for p in P.elements})

    phis = [make(c.q(2 * i - 1), c.q(2 * i)) for i in range(1, m + 1)]
    psis = [make(c.q(2 * i - 1), c.q(2 * i - 2)) for i in range(1, m + 1)]
    f = Binomial(MonomialOfMaps(phis), MonomialOfMaps(psis))
    assert in_ideal(f), "witness binomial not in the ideal"
    assert not f.is_zero, "witness binomial is zero"
    return f


def witness_for(P: Poset, c: PosetCycle) -> Binomial:
    """``nonquadratic_witness`` for any P that is not an antichain and whose
    components are rooted or co-rooted.

    Co-rooted components go through the order duals; the other components are
    sent constantly to the least label of Q.
    """
    Q = c.parent
    comps = connected_components(P)
    core = next((C for C in comps if len(C) > 1), None)
    if core is None:
        raise PosetError("P is an antichain; J(P,Q) is generated in degree 2")
    if is_rooted(core):
        f = nonquadratic_witness(core, c)
    elif is_co_rooted(core):
        shifted = PosetCycle(Q.dual(), c.seq[1:] + c.seq[:1])
        fd = nonquadratic_witness(core.dual(), shifted)
        f = Binomial(MonomialOfMaps(phi.dual() for phi in fd.plus),
                     MonomialOfMaps(phi.dual() for phi in fd.minus))
    else:
        raise PosetError("component is neither rooted nor co-rooted")
    if core is P:
        return f
    rest = [C for C in comps if C is not core]
    low = Q.elements[0]
    consts = [IsotoneMap.from_assignment(C, Q, {p: low for p in C.elements}) for C in rest]

    def lift(mono):
        return MonomialOfMaps(join_maps(P, [phi] + consts) for phi in mono)

    g = Binomial(lift(f.plus), lift(f.minus))
    assert in_ideal(g) and not g.is_zero
    return g
