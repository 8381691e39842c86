from hypothesis import strategies as st

from isotonian.poset import Poset


@st.composite
def posets(draw, min_size=1, max_size=5, prefix="e"):
    """Random posets: relations only go from a smaller to a larger index, so
    the result is always acyclic.  Labels are shuffled so sorted order and
    the order relation are unrelated."""
    n = draw(st.integers(min_size, max_size))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    names = draw(st.permutations([f"{prefix}{k}" for k in range(n)]))
    return Poset(names, [(names[i], names[j]) for i, j in chosen])
