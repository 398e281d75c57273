"""Hypothesis strategies shared by the module tests."""

from hypothesis import strategies as st

from cobordism import IntMatrix


@st.composite
def int_matrices(draw, max_rows=6, max_cols=6, bound=20, rows=None, cols=None):
    m = draw(st.integers(0, max_rows)) if rows is None else rows
    n = draw(st.integers(0, max_cols)) if cols is None else cols
    entries = draw(st.lists(st.integers(-bound, bound), min_size=m * n, max_size=m * n))
    return IntMatrix(m, n, entries)


@st.composite
def unimodular(draw, n, steps=6):
    """Product of elementary integer row operations."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))
        if i != j:
            c = draw(st.integers(-2, 2))
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    if n and draw(st.booleans()):
        M[0] = [-a for a in M[0]]
    return IntMatrix.from_rows(M, cols=n)


seeds = st.integers(0, 2**32 - 1)
