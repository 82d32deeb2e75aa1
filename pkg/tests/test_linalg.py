import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from xxz_qrg.hamiltonian import ISY, SX, SZ
from xxz_qrg.linalg import (
    JacobiConvergenceError,
    eigh_symmetric,
    ground_cluster,
    kron,
    sqrt_psd,
)


def test_diagonal_input_is_sorted():
    w, v = eigh_symmetric(np.diag([3.0, 1.0, 2.0]))
    assert w.tolist() == [1.0, 2.0, 3.0]
    assert np.allclose(np.abs(v), np.eye(3)[:, [1, 2, 0]])


def test_pauli_x_spectrum():
    w, _ = eigh_symmetric(SX)
    assert np.allclose(w, [-1.0, 1.0], atol=1e-15)


def test_two_site_flip_block():
    # J/4 [[-D, 2], [2, -D]] at J = D = 1 has eigenvalues (-3/4, 1/4)
    w, _ = eigh_symmetric(0.25 * np.array([[-1.0, 2.0], [2.0, -1.0]]))
    assert w[0] == pytest.approx(-0.75, abs=1e-15)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        eigh_symmetric(np.ones((2, 3)))
    with pytest.raises(ValueError):
        eigh_symmetric(np.array([[0.0, 1.0], [0.5, 0.0]]))


def test_sweep_cap_reports_off_norm(rng):
    m = rng.normal(size=(12, 12))
    with pytest.raises(JacobiConvergenceError) as info:
        eigh_symmetric(m + m.T, max_sweeps=1)
    assert info.value.off_norm > 0


def test_eigenpair_residuals_and_orthogonality(rng):
    m = rng.normal(size=(40, 40))
    a = m + m.T
    w, v = eigh_symmetric(a)
    norm_inf = np.max(np.sum(np.abs(a), axis=1))
    assert np.max(np.abs(a @ v - v * w)) <= 1e-10 * norm_inf
    assert np.max(np.abs(v.T @ v - np.eye(40))) <= 1e-10
    assert np.all(np.diff(w) >= 0)
    # third-party cross-check of the spectrum
    assert np.allclose(w, np.linalg.eigvalsh(a), atol=1e-12)


def test_block_structured_matrix_keeps_exact_zero_eigenvalue():
    x = 0.37
    a = np.array([[x, x], [x, x]])
    w, _ = eigh_symmetric(a)
    assert w[0] == 0.0


symmetric = st.integers(1, 24).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.floats(-10, 10, allow_nan=False))
).map(lambda m: m + m.T)


@settings(max_examples=40, deadline=None)
@given(symmetric)
def test_reconstruction(a):
    w, v = eigh_symmetric(a)
    scale = max(1.0, np.max(np.abs(a)))
    assert np.max(np.abs(v @ np.diag(w) @ v.T - a)) <= 1e-9 * scale


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 16).flatmap(lambda n: arrays(np.float64, (n, n), elements=st.floats(-3, 3))))
def test_sqrt_psd_squares_back(m):
    a = m.T @ m
    s = sqrt_psd(a)
    assert np.allclose(s, s.T, atol=1e-12)
    assert np.max(np.abs(s @ s - a)) <= 1e-9 * max(1.0, np.max(np.abs(a)))


def test_sqrt_psd_examples():
    assert np.allclose(sqrt_psd(np.eye(4)), np.eye(4))
    assert np.allclose(sqrt_psd(np.diag([4.0, 1.0, 0.0, 0.0])), np.diag([2.0, 1.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        sqrt_psd(np.diag([1.0, -0.1]))


def test_kron_examples():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
    assert np.array_equal(kron(SZ, SZ), np.diag([1.0, -1.0, -1.0, 1.0]))
    # sigma_y (x) sigma_y written with the real i*sigma_y factors
    yy = -kron(ISY, ISY)
    assert np.array_equal(yy, np.fliplr(np.diag([-1.0, 1.0, 1.0, -1.0])))
    sy = np.array([[0, -1j], [1j, 0]])
    assert np.array_equal(yy, np.kron(sy, sy).real)


def test_kron_dimension_cap():
    with pytest.raises(ValueError):
        kron(np.eye(64), np.eye(128))


@settings(max_examples=20, deadline=None)
@given(
    arrays(np.float64, (2, 3), elements=st.integers(-50, 50)),
    arrays(np.float64, (3, 2), elements=st.integers(-50, 50)),
    arrays(np.float64, (2, 2), elements=st.integers(-50, 50)),
)
def test_kron_associative(a, b, c):
    # integer entries: every triple product is exact, so the grouping cannot matter
    left = kron(a, kron(b, c))
    right = kron(kron(a, b), c)
    assert left.shape == right.shape
    assert np.array_equal(left, right)


def test_ground_cluster():
    assert ground_cluster(np.array([-1.0, -1.0 + 1e-12, 0.5])) == 2
    assert ground_cluster(np.array([-1.0, -0.9])) == 1
