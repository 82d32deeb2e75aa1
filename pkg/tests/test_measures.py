import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from xxz_qrg.hamiltonian import SECTOR_UP
from xxz_qrg.measures import (
    binary_entropy,
    concurrence_closed_form,
    density_matrix,
    entanglement_of_formation,
    entropy_site2,
    partial_trace,
    renormalized_measures,
    von_neumann_entropy,
    wootters_concurrence,
)

# frozen from 30-digit mpmath evaluations of the closed forms
EOF_ONE_THIRD = 0.18729859856877245
H2_ONE_THIRD = 0.91829583405448951
H2_POINT_FOUR = 0.97095059445466864
C_AT_TWO = 0.21132486540518712


def test_density_matrix_is_pure_projector():
    for d in (0.0, 0.6, 1.0, 4.0):
        rho = density_matrix(d)
        assert np.allclose(rho @ rho, rho, atol=1e-15)
        assert np.trace(rho) == pytest.approx(1.0, abs=1e-15)


def test_density_matrix_diagonal_at_isotropic_point():
    diag = np.diag(density_matrix(1.0))[list(SECTOR_UP)]
    assert np.allclose(diag, [1 / 6, 4 / 6, 1 / 6], atol=1e-15)


def test_partial_trace_examples():
    rho = density_matrix(1.0)
    r13 = partial_trace(rho, [1, 3])
    expected = np.array([[4, 0, 0, 0], [0, 1, 1, 0], [0, 1, 1, 0], [0, 0, 0, 0]]) / 6
    assert np.allclose(r13, expected, atol=1e-15)
    assert np.allclose(partial_trace(rho, [2]), np.diag([1 / 3, 2 / 3]), atol=1e-15)
    up = np.zeros(8)
    up[0] = 1.0
    assert np.array_equal(partial_trace(np.outer(up, up), [3]), np.diag([1.0, 0.0]))


def test_partial_trace_ordering_against_reshape():
    rng = np.random.default_rng(3)
    psi = rng.normal(size=16)
    psi /= np.linalg.norm(psi)
    rho = np.outer(psi, psi)
    m = psi.reshape(2, 2, 2, 2)
    ref = np.einsum("abcd,ebfd->acef", m, m).reshape(4, 4)
    assert np.allclose(partial_trace(rho, [1, 3]), ref, atol=1e-15)


def test_partial_trace_rejects_bad_subsets():
    rho = density_matrix(1.0)
    with pytest.raises(ValueError):
        partial_trace(rho, [])
    with pytest.raises(ValueError):
        partial_trace(rho, [4])
    with pytest.raises(ValueError):
        partial_trace(np.eye(3) / 3, [1])


def test_eq36_off_diagonal_sign_holds_without_phase():
    # computed from the state itself: the 1-3 coherence is +1/(2+q^2) for every delta
    for d in (0.0, 1.0, 3.0):
        r13 = partial_trace(density_matrix(d), [1, 3])
        assert r13[1, 2] > 0 and r13[1, 2] == pytest.approx(r13[1, 1], abs=1e-15)


def test_closed_form_concurrence():
    assert concurrence_closed_form(0.0) == pytest.approx(0.5, abs=1e-15)
    assert concurrence_closed_form(1.0) == pytest.approx(1 / 3, abs=1e-15)
    assert concurrence_closed_form(2.0) == pytest.approx(C_AT_TWO, abs=1e-15)


@pytest.mark.parametrize("d", [0.0, 0.5, 1.0, 2.0, 5.0])
def test_wootters_matches_closed_form(d):
    r13 = partial_trace(density_matrix(d), [1, 3])
    assert wootters_concurrence(r13) == pytest.approx(concurrence_closed_form(d), abs=1e-12)


def test_wootters_reference_states():
    assert wootters_concurrence(np.eye(4) / 4) == pytest.approx(0.0, abs=1e-15)
    bell = np.array([0.0, 1.0, 1.0, 0.0]) / math.sqrt(2)
    assert wootters_concurrence(np.outer(bell, bell)) == pytest.approx(1.0, abs=1e-12)


def test_wootters_agrees_with_textbook_spectrum(rng):
    # eigenvalues of the non-symmetric rho @ rho~ (third-party eigensolver)
    yy = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]])).real
    for _ in range(20):
        m = rng.normal(size=(4, 4))
        rho = m @ m.T
        rho /= np.trace(rho)
        lam = np.sort(np.sqrt(np.clip(np.linalg.eigvals(rho @ yy @ rho @ yy).real, 0, None)))[::-1]
        ref = max(0.0, lam[0] - lam[1] - lam[2] - lam[3])
        assert wootters_concurrence(rho) == pytest.approx(ref, abs=1e-7)


def test_wootters_rejects_invalid_input():
    with pytest.raises(ValueError):
        wootters_concurrence(np.eye(4))
    with pytest.raises(ValueError):
        wootters_concurrence(np.diag([1.5, -0.5, 0.0, 0.0]))


def test_entanglement_of_formation():
    assert entanglement_of_formation(0.0) == 0.0
    assert entanglement_of_formation(1.0) == pytest.approx(1.0, abs=1e-15)
    assert entanglement_of_formation(1 / 3) == pytest.approx(EOF_ONE_THIRD, abs=1e-14)
    with pytest.raises(ValueError):
        entanglement_of_formation(1.2)


def test_entanglement_of_formation_is_increasing():
    values = [entanglement_of_formation(c) for c in np.linspace(0, 1, 501)]
    assert np.all(np.diff(values) > 0)


def test_entropy_site2():
    assert entropy_site2(0.0) == 1.0
    assert entropy_site2(1.0) == pytest.approx(H2_ONE_THIRD, abs=1e-15)
    assert 0.0 < entropy_site2(1e8) < 2e-14
    assert entropy_site2(math.inf) == 0.0
    assert binary_entropy(0.4) == pytest.approx(H2_POINT_FOUR, abs=1e-15)


@given(st.floats(0.0, 20.0))
def test_partner_state_gives_same_measures(d):
    a, b = density_matrix(d), density_matrix(d, partner=True)
    assert wootters_concurrence(partial_trace(a, [1, 3])) == pytest.approx(
        wootters_concurrence(partial_trace(b, [1, 3])), abs=1e-13)
    assert von_neumann_entropy(partial_trace(a, [2])) == pytest.approx(
        von_neumann_entropy(partial_trace(b, [2])), abs=1e-13)


def test_measures_decrease_with_anisotropy():
    grid = np.linspace(0.0, 10.0, 1001)
    c = [concurrence_closed_form(d) for d in grid]
    e = [entropy_site2(d) for d in grid]
    assert np.all(np.diff(c) < 0) and np.all(np.diff(e) < 0)


def test_monogamy_at_xy_point():
    assert entropy_site2(0.0) == 1.0
    assert entanglement_of_formation(concurrence_closed_form(0.0)) < 1.0


def test_renormalized_measures():
    for n in range(0, 25):
        r = renormalized_measures(1.0, n)
        assert r.C13 == pytest.approx(1 / 3, abs=1e-15)
        assert r.effective_size == 3 ** (n + 1)
    spin_fluid = renormalized_measures(0.8, 30)
    assert spin_fluid.C13 == pytest.approx(0.5, abs=1e-6)
    assert spin_fluid.E_entropy == pytest.approx(1.0, abs=1e-6)
    ising = renormalized_measures(1.2, 20)
    assert ising.C13 <= 1e-3 and ising.E_entropy <= 1e-2


@given(st.floats(0.0, 5.0), st.integers(0, 15))
def test_report_ranges(d, n):
    r = renormalized_measures(d, n)
    for v in (r.C13, r.E_formation, r.E_entropy):
        assert 0.0 <= v <= 1.0
    assert r.E_formation == entanglement_of_formation(r.C13)
