import itertools

import pytest
from hypothesis import strategies as st

from idpqaoa.graph import Graph, complete_graph, path_graph, six_node_graph
from idpqaoa.ising import energy_table, qubo_to_ising
from idpqaoa.qubo import build_qubo


@pytest.fixture(scope="session")
def six():
    return six_node_graph()


@pytest.fixture(scope="session")
def six_model(six):
    return build_qubo(six, 4.5)


@pytest.fixture(scope="session")
def six_table(six_model):
    return energy_table(qubo_to_ising(six_model))


@pytest.fixture(scope="session")
def k3():
    return complete_graph(3)


@pytest.fixture(scope="session")
def p3():
    return path_graph(3)


@st.composite
def graphs(draw, min_vertices=1, max_vertices=6):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph.from_edges(n, chosen)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(test_acceptance.RESULTS):
        ok, detail = test_acceptance.RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}  {detail}")
