import numpy as np
import pytest

from fracrd.errors import OracleError
from fracrd.grid import make_grid
from fracrd.oracle import (dense_eigen_check, dense_fractional_apply, dense_fractional_matrix,
                           dense_pair, exact_linear_step, fractional_apply_deviation,
                           kron_sum, linear_step_errors, oracle_report)
from fracrd.etd import fit_order

BCS = ["periodic", "dirichlet", "neumann"]
ALPHAS = [1.2, 1.5, 1.8, 2.0]


def test_dirichlet_pair_as_printed():
    p = dense_pair(4, 0.25, "dirichlet")
    A = np.array([[5 / 6, 1 / 12, 0], [1 / 12, 5 / 6, 1 / 12], [0, 1 / 12, 5 / 6]])
    B = 16 * np.array([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    assert np.array_equal(p.A, A)
    assert np.array_equal(p.B, B)
    # strict diagonal dominance of A
    off = np.sum(np.abs(p.A), axis=1) - np.abs(np.diag(p.A))
    assert np.all(np.abs(np.diag(p.A)) > off)


def test_periodic_pair_rows_sum_to_zero():
    p = dense_pair(4, 0.25, "periodic")
    assert p.A[0, -1] == p.A[-1, 0] == 1 / 12
    np.testing.assert_array_equal(p.B.sum(axis=1), 0)
    np.testing.assert_allclose(p.A.sum(axis=1), 1)


def test_neumann_pair_boundary_rows():
    p = dense_pair(4, 0.25, "neumann")
    assert p.A.shape == (5, 5)
    np.testing.assert_array_equal(p.B[0], 16 * np.array([2, -2, 0, 0, 0]))
    np.testing.assert_array_equal(p.B[-1], 16 * np.array([0, 0, 0, -2, 2]))
    np.testing.assert_array_equal(p.A[0, :2], [5 / 6, 1 / 6])
    np.testing.assert_array_equal(p.A[-1, -2:], [1 / 6, 5 / 6])


def test_size_guard():
    with pytest.raises(ValueError):
        dense_pair(128, 1 / 128, "dirichlet")
    with pytest.raises(ValueError):
        dense_pair(3, 1 / 3, "dirichlet")


@pytest.mark.parametrize("bc", BCS)
def test_eigen_check_n8(bc):
    assert dense_eigen_check(8, 1 / 8, bc) < 1e-10
    assert dense_eigen_check(8, 1 / 8, bc, alpha=1.4) < 1e-10


def test_printed_periodic_angle_is_wrong():
    N, h = 8, 1 / 8
    n = np.arange(1, N + 1)
    s = np.sin((n - 1) * np.pi / (2 * N)) ** 2
    printed = 4 * s / (h * h * (1 - s / 3))
    assert dense_eigen_check(N, h, "periodic", closed_form=printed) > 0.1


def test_neumann_eigenvalue_count():
    with pytest.raises(OracleError):
        dense_eigen_check(8, 1 / 8, "neumann", closed_form=np.zeros(7))


@pytest.mark.parametrize("bc", BCS)
def test_alpha_two_is_T(bc, rng):
    p = dense_pair(8, 1 / 8, bc)
    u = rng.standard_normal(p.A.shape[0])
    np.testing.assert_allclose(dense_fractional_apply(p, 2.0, u), p.T @ u, atol=1e-11 * np.max(np.abs(p.T)))


@pytest.mark.parametrize("bc", ["periodic", "neumann"])
def test_constant_is_annihilated(bc):
    p = dense_pair(8, 1 / 8, bc)
    out = dense_fractional_apply(p, 1.5, np.ones(p.A.shape[0]))
    assert np.max(np.abs(out)) < 1e-11 * np.max(np.abs(dense_fractional_matrix(p, 1.5)))


@pytest.mark.parametrize("bc", BCS)
@pytest.mark.parametrize("N", [4, 8, 16])
@pytest.mark.parametrize("alpha", ALPHAS)
def test_fast_path_matches_dense(bc, N, alpha):
    assert fractional_apply_deviation(N, bc, alpha, trials=10) <= 1e-10


@pytest.mark.parametrize("bc", BCS)
@pytest.mark.parametrize("dim", [2, 3])
def test_fast_path_matches_dense_multid(bc, dim):
    N = 8 if dim == 3 else 16
    assert fractional_apply_deviation(N, bc, 1.4, dim=dim, trials=3) <= 1e-10


@pytest.mark.parametrize("bc", BCS)
def test_per_axis_dense_equals_kron_sum(bc, rng):
    p = dense_pair(4, 0.25, bc)
    n = p.A.shape[0]
    u = rng.standard_normal((n, n))
    M = dense_fractional_matrix(p, 1.6, dim=2)
    np.testing.assert_allclose(dense_fractional_apply(p, 1.6, u).ravel(), M @ u.ravel(), atol=1e-10)
    np.testing.assert_allclose(kron_sum(p.T, 2), np.kron(p.T, np.eye(n)) + np.kron(np.eye(n), p.T))


def test_exact_step_examples(rng):
    p = dense_pair(8, 1 / 8, "dirichlet")
    A = dense_fractional_matrix(p, 2.0)
    v = rng.standard_normal(7)
    assert np.array_equal(exact_linear_step(A, np.zeros_like(A), 0.0, v), v)
    w, V = np.linalg.eig(A)
    k = np.argmin(w.real)
    vec = V[:, k].real
    out = exact_linear_step(A, np.zeros_like(A), 1e-3, vec)
    np.testing.assert_allclose(out, np.exp(-w[k].real * 1e-3) * vec, atol=1e-12)


@pytest.mark.parametrize("bc", BCS)
@pytest.mark.parametrize("N", [4, 8, 16])
@pytest.mark.parametrize("alpha", ALPHAS)
def test_one_step_matches_exact_and_has_order_five(bc, N, alpha):
    taus, errs = linear_step_errors(N, bc, alpha)
    assert max(errs) <= 1e-7  # tau * rho = 0.1 at most
    assert abs(fit_order(taus, errs) - 5) <= 0.2
    taus, errs = linear_step_errors(N, bc, alpha, levels=1, tau0=taus[-1] / 4)
    assert errs[0] <= 1e-10


def test_oracle_report():
    r = oracle_report(16, "dirichlet", 1.4)
    assert r.ok
    assert r.eigen_deviation < 1e-10 and r.apply_deviation < 1e-10
    assert abs(r.step_order - 5) <= 0.2
    with pytest.raises(ValueError):
        oracle_report(128, "dirichlet", 1.4)
