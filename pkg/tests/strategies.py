"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from lagfib.linalg import IntMatrix


def matrices(max_rows=6, max_cols=6, lo=-9, hi=9):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                           min_size=r, max_size=r).map(IntMatrix.from_rows)))


def unimodulars(n):
    """Random products of elementary row operations and sign flips."""
    ops = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(-3, 3))
    return st.lists(ops, max_size=10).map(lambda seq: _elementary_product(n, seq))


def _elementary_product(n, seq):
    m = IntMatrix.identity(n).to_lists()
    for i, j, c in seq:
        if i != j:
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        elif c < 0:
            m[i] = [-a for a in m[i]]
    return IntMatrix.from_rows(m)
