import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idpqaoa.graph import Graph
from idpqaoa.ising import (
    EnergyTable,
    IsingHamiltonian,
    QubitBudgetError,
    basis_index,
    bitstring,
    energy,
    energy_table,
    qubo_to_ising,
)
from idpqaoa.qubo import QuboModel, bits_from_string, build_qubo, evaluate_qubo

from .conftest import graphs


def _model(n, linear=None, quadratic=None, constant=0.0):
    return QuboModel(n, n, linear or {}, quadratic or {}, constant, 1.0)


def test_single_variable():
    h = qubo_to_ising(_model(1, {0: 1.0}))
    assert h.constant == 0.5
    assert h.linear == {0: -0.5}
    assert h.quadratic == {}
    assert energy(h, "1") == 1.0
    assert energy(h, "0") == 0.0


def test_product_of_two():
    h = qubo_to_ising(_model(2, quadratic={(0, 1): 1.0}))
    assert h.constant == 0.25
    assert h.linear == {0: -0.25, 1: -0.25}
    assert h.quadratic == {(0, 1): 0.25}
    assert [energy(h, z) for z in ("00", "01", "10", "11")] == [0.0, 0.0, 0.0, 1.0]


def test_energy_length_mismatch():
    h = qubo_to_ising(_model(2, quadratic={(0, 1): 1.0}))
    with pytest.raises(ValueError):
        energy(h, "1")


def test_energy_six_optimum(six_model):
    assert energy(qubo_to_ising(six_model), "0110010001") == pytest.approx(3.0, abs=1e-12)


def test_table_small():
    assert list(energy_table(IsingHamiltonian(1, 0.5, {0: -0.5}, {})).energies) == [0.0, 1.0]
    h = qubo_to_ising(_model(2, quadratic={(0, 1): 1.0}))
    assert list(energy_table(h).energies) == [0.0, 0.0, 0.0, 1.0]


def test_table_six_exhaustive(six_model, six_table):
    h = qubo_to_ising(six_model)
    for k in range(1024):
        z = bitstring(k, 10)
        assert abs(six_table.energies[k] - evaluate_qubo(six_model, bits_from_string(z))) <= 1e-9
        if k % 97 == 0:
            assert energy(h, z) == pytest.approx(six_table.energies[k], abs=1e-9)
    assert six_table.minimum == pytest.approx(3.0)
    assert six_table.argmin() == ["0110010001", "1001100100"]


def test_index_convention():
    assert basis_index("011001") == 0b011001
    assert basis_index([1, 0, 0]) == 4
    assert bitstring(4, 3) == "100"


def test_budget():
    with pytest.raises(QubitBudgetError):
        energy_table(IsingHamiltonian(5, 0.0, {}, {}), max_qubits=4)


def test_table_is_read_only(six_table):
    with pytest.raises(ValueError):
        six_table.energies[0] = 1.0


def test_table_shape_checked():
    with pytest.raises(ValueError):
        EnergyTable(2, np.zeros(3))


coefficient = st.floats(-10, 10, allow_nan=False).map(lambda c: round(c, 3))


@st.composite
def qubo_models(draw, max_vars=6):
    n = draw(st.integers(1, max_vars))
    linear = draw(st.dictionaries(st.integers(0, n - 1), coefficient))
    pairs = list(itertools.combinations(range(n), 2))
    quadratic = draw(st.dictionaries(st.sampled_from(pairs), coefficient)) if pairs else {}
    return _model(n, linear, quadratic, draw(coefficient))


@settings(max_examples=80, deadline=None)
@given(qubo_models())
def test_qubo_ising_equivalence(m):
    table = energy_table(qubo_to_ising(m))
    for k in range(1 << m.variable_count):
        bits = bits_from_string(bitstring(k, m.variable_count))
        assert abs(table.energies[k] - evaluate_qubo(m, bits)) <= 1e-9


@settings(max_examples=40, deadline=None)
@given(qubo_models(), st.floats(-5, 5, allow_nan=False))
def test_scaling(m, c):
    base = energy_table(qubo_to_ising(m)).energies
    scaled = energy_table(qubo_to_ising(m.scaled(c))).energies
    np.testing.assert_allclose(scaled, c * base, atol=1e-9)


@settings(max_examples=30, deadline=None)
@given(graphs(max_vertices=4))
def test_table_minimum_matches_brute_force(g):
    m = build_qubo(g, 0.75 * g.vertex_count)
    if m.variable_count > 12:
        return
    table = energy_table(qubo_to_ising(m))
    brute = min(evaluate_qubo(m, list(b)) for b in itertools.product((0, 1), repeat=m.variable_count))
    assert table.minimum == pytest.approx(brute, abs=1e-9)
