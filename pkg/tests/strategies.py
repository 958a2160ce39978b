from hypothesis import strategies as st

from spechtres.tableau import Partition, Tableau


@st.composite
def partitions(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    parts = []
    remaining = n
    while remaining:
        part = draw(st.integers(1, min(remaining, parts[-1] if parts else remaining)))
        parts.append(part)
        remaining -= part
    return Partition(parts)


@st.composite
def tableaux(draw, shape=None, min_n=1, max_n=7):
    if shape is None:
        shape = draw(partitions(min_n, max_n))
    values = draw(st.permutations(range(1, sum(shape) + 1)))
    rows, k = [], 0
    for length in shape:
        rows.append(values[k:k + length])
        k += length
    return Tableau(rows)


@st.composite
def permutations_of(draw, n):
    return tuple(draw(st.permutations(range(1, n + 1))))
