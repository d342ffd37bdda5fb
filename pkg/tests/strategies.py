"""
Hypothesis strategies for partitions and antichains.
"""

from hypothesis import strategies as st

from src.partitions import make_partition, maximal_elements


@st.composite
def partitions(draw, n=None, max_parties=5):
    """Any partition: parties with the same drawn label share a block."""

    if n is None:
        n = draw(st.integers(min_value=1, max_value=max_parties))
    labels = draw(st.lists(st.integers(min_value=0, max_value=n - 1), min_size=n, max_size=n))
    blocks = {}
    for party, label in enumerate(labels):
        blocks.setdefault(label, []).append(party)
    return make_partition(blocks.values(), n)

@st.composite
def partition_pairs(draw, max_parties=5):
    n = draw(st.integers(min_value=1, max_value=max_parties))
    return draw(partitions(n)), draw(partitions(n))

@st.composite
def antichains(draw, n=None, max_parties=5, max_size=4):
    if n is None:
        n = draw(st.integers(min_value=1, max_value=max_parties))
    family = draw(st.lists(partitions(n), min_size=1, max_size=max_size))
    return maximal_elements(family)
