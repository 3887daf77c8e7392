import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracrd.errors import GridError
from fracrd.grid import (BoundaryCondition, Field, State, convergence_order, make_grid,
                         max_norm_error)

BCS = list(BoundaryCondition)


def test_dirichlet_1d_example():
    g = make_grid(1, (0, 1), 8, "dirichlet")
    assert g.h == 0.125
    assert g.shape == (7,)
    np.testing.assert_allclose(g.coords(), np.arange(1, 8) / 8)


def test_periodic_2d_example():
    g = make_grid(2, [(0, 1), (0, 1)], 16, "periodic")
    assert g.h == 0.0625
    assert g.shape == (16, 16)


def test_schnakenberg_cube():
    g = make_grid(3, (0, 10), 32, BoundaryCondition.PERIODIC)
    assert g.h == 0.3125
    assert g.shape == (32, 32, 32)


def test_neumann_nodes_include_both_ends():
    g = make_grid(1, (-1, 1), 4, "neumann")
    np.testing.assert_allclose(g.coords(), [-1, -0.5, 0, 0.5, 1])


@pytest.mark.parametrize("bad", [
    dict(dim=1, bounds=(0, 1), N=3, bc="periodic"),
    dict(dim=4, bounds=(0, 1), N=8, bc="periodic"),
    dict(dim=0, bounds=(0, 1), N=8, bc="periodic"),
    dict(dim=1, bounds=(1, 0), N=8, bc="periodic"),
    dict(dim=1, bounds=(1, 1), N=8, bc="periodic"),
    dict(dim=2, bounds=[(0, 1), (0, 2)], N=8, bc="periodic"),
    dict(dim=1, bounds=(0, 1), N=8, bc="robin"),
])
def test_rejects_invalid(bad):
    with pytest.raises(GridError):
        make_grid(**bad)


@given(N=st.integers(4, 64), bc=st.sampled_from(BCS), dim=st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_active_dof_rule(N, bc, dim):
    g = make_grid(dim, (0, 1), N, bc)
    expected = {BoundaryCondition.PERIODIC: N, BoundaryCondition.DIRICHLET: N - 1,
                BoundaryCondition.NEUMANN: N + 1}[bc]
    assert g.shape == (expected,) * dim
    assert g.zeros().shape == g.shape
    assert all(c.shape == g.shape for c in g.mesh())


def test_grid_is_pure():
    assert make_grid(2, (0, 1), 8, "neumann") == make_grid(2, (0, 1), 8, "neumann")


def test_bc_codes_round_trip():
    for bc in BCS:
        assert BoundaryCondition.from_code(bc.code) is bc
    with pytest.raises(GridError):
        BoundaryCondition.from_code(9)


def test_field_and_state_shapes():
    g = make_grid(2, (0, 1), 8, "periodic")
    with pytest.raises(GridError):
        Field(g, np.zeros((8, 7)))
    s = State.from_arrays(g, [np.zeros((8, 8)), np.ones((8, 8))])
    assert len(s) == 2 and s.grid == g
    c = s.copy()
    c.arrays[0][0, 0] = 5
    assert s.arrays[0][0, 0] == 0
    g2 = make_grid(2, (0, 1), 16, "periodic")
    with pytest.raises(GridError):
        State([Field(g, np.zeros((8, 8))), Field(g2, np.zeros((16, 16)))])


def test_max_norm_error_examples():
    a = np.linspace(0, 1, 9)
    assert max_norm_error(a, a) == 0
    b = a.copy()
    b[3] += 1e-3
    assert math.isclose(max_norm_error(b, a), 1e-3, rel_tol=1e-9)
    with pytest.raises(GridError):
        max_norm_error(np.zeros(3), np.zeros(4))


@given(st.lists(st.floats(-1e3, 1e3), min_size=3, max_size=3),
       st.lists(st.floats(-1e3, 1e3), min_size=3, max_size=3),
       st.lists(st.floats(-1e3, 1e3), min_size=3, max_size=3))
def test_max_norm_metric_properties(a, b, c):
    a, b, c = map(np.array, (a, b, c))
    assert max_norm_error(a, b) == max_norm_error(b, a)
    assert max_norm_error(a, c) <= max_norm_error(a, b) + max_norm_error(b, c) + 1e-9


def test_convergence_order_examples():
    assert convergence_order(1.0e-2, 6.25e-4) == pytest.approx(4.0, abs=1e-12)
    # huxley2d reference errors, alpha = 2.0, 1/h = 20 and 40
    assert convergence_order(1.4159e-3, 8.6173e-5) == pytest.approx(4.04, abs=5e-3)
    assert convergence_order(0.3, 0.3) == 0
    for bad in [(0, 1), (1, 0), (-1, 1)]:
        with pytest.raises(ValueError):
            convergence_order(*bad)
