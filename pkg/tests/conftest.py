from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from tuauction.corpus import preset, random_corpus
from tuauction.instance import KFlowGraph, kflow_instance

DATA = Path(__file__).parent / "data"

CORPUS_SEED = 20240611
CORPUS_SIZE = 110


@pytest.fixture(scope="session")
def d1():
    return preset("d1")


@pytest.fixture(scope="session")
def d2():
    return preset("d2")


@pytest.fixture(scope="session")
def d3():
    return preset("d3")


@pytest.fixture(scope="session")
def d4():
    return preset("d4")


@pytest.fixture(scope="session")
def corpus():
    """Fixtures D1, D2, D4 followed by seeded random layered k-flow instances
    (<= 8 nodes, <= 14 edges, integer costs <= 10)."""
    return [preset("d1"), preset("d2"), preset("d4")] + random_corpus(CORPUS_SIZE, seed=CORPUS_SEED)


def vec(*values):
    return tuple(Fraction(v) for v in values)


@st.composite
def kflow_graphs(draw, max_nodes=5, max_edges=7, max_cost=5):
    """Small arbitrary digraphs (cycles and parallel arcs allowed) from node 0 to the last node."""
    n = draw(st.integers(2, max_nodes))
    arcs = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(0, max_cost)).filter(
                lambda a: a[0] != a[1]
            ),
            min_size=1,
            max_size=max_edges,
        )
    )
    return KFlowGraph.build(range(n), 0, n - 1, arcs)


@st.composite
def kflow_instances(draw, **kw):
    return kflow_instance(draw(kflow_graphs(**kw)))
