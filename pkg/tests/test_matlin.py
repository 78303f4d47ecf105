import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from mdrc.errors import NonFinite, SingularMatrix, UnsupportedShape
from mdrc.matlin import (
    as_mat,
    det,
    eigenvalues,
    euler_discretize,
    expm,
    is_schur,
    mat_inverse,
    matrix_rank,
    spectral_radius,
    zoh_discretize,
)
from mdrc.experiments import PMDC_PERIOD, pmdc_continuous

EX1_CLOSED_LOOP = np.array([[1.0, 0.01], [-0.22, 0.95]])


def test_as_mat_rejects_nan_and_big_shapes():
    with pytest.raises(NonFinite):
        as_mat([[1.0, np.nan]])
    with pytest.raises(UnsupportedShape):
        as_mat(np.zeros((5, 1)))
    m = as_mat([1.0, 2.0])
    assert m.shape == (2, 1)


def test_inverse_identity():
    assert np.array_equal(mat_inverse(np.eye(2)), np.eye(2))


def test_inverse_hand_adjugate():
    # det = 0*0.0095 - 0.0001*0.01 = -1e-6
    P = np.array([[0.0, 0.0001], [0.01, 0.0095]])
    expected = np.array([[-9500.0, 100.0], [10000.0, 0.0]])
    np.testing.assert_allclose(mat_inverse(P), expected, rtol=1e-12, atol=1e-9)


def test_inverse_singular():
    with pytest.raises(SingularMatrix):
        mat_inverse(np.array([[1.0, 0.0], [2.0, 0.0]]))


def test_inverse_relative_tolerance_is_unit_free():
    # tiny entries but well conditioned; an absolute det threshold would call this singular
    m = 1e-5 * np.array([[2.0, 1.0], [1.0, 3.0]])
    np.testing.assert_allclose(mat_inverse(m) @ m, np.eye(2), atol=1e-12)


def test_inverse_3x3_against_numpy():
    m = np.array([[2.0, -1.0, 0.5], [0.3, 4.0, 1.0], [-2.0, 0.1, 3.0]])
    np.testing.assert_allclose(mat_inverse(m), np.linalg.inv(m), rtol=1e-12)


well_conditioned = st.integers(2, 3).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.floats(-10, 10, allow_nan=False))
).filter(lambda m: np.linalg.cond(m) < 1e6)


@settings(max_examples=200, deadline=None)
@given(well_conditioned)
def test_inverse_round_trip(m):
    inv = mat_inverse(m)
    assert np.max(np.abs(inv @ m - np.eye(m.shape[0]))) <= 1e-8


def test_eigenvalues_example1_closed_loop():
    ev = eigenvalues(EX1_CLOSED_LOOP)
    assert abs(ev[0].real - 0.9750) <= 1e-12
    assert abs(ev[0].imag - 0.0397) <= 1e-3
    assert ev[1] == ev[0].conjugate()


def test_eigenvalues_trivial():
    assert eigenvalues(np.eye(3)) == [1, 1, 1]
    assert sorted(z.real for z in eigenvalues(np.diag([0.5, -0.3]))) == pytest.approx([-0.3, 0.5], abs=1e-15)


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 3).flatmap(lambda n: arrays(np.float64, (n, n), elements=st.floats(-5, 5))))
def test_eigenvalues_trace_and_det(m):
    ev = eigenvalues(m)
    assert abs(sum(ev) - np.trace(m)) <= 1e-9
    assert abs(np.prod(ev) - det(m)) <= 1e-9 * max(1.0, np.max(np.abs(m)) ** m.shape[0])


@settings(max_examples=200, deadline=None)
@given(arrays(np.float64, (3, 3), elements=st.floats(-3, 3)))
def test_eigenvalues_3x3_match_numpy(m):
    ours = np.sort_complex(np.array(eigenvalues(m)))
    ref = np.sort_complex(np.linalg.eigvals(m))
    # multiple roots are ill conditioned: compare as a set with matching tolerance
    for z in ours:
        assert np.min(np.abs(ref - z)) <= 1e-6 * max(1.0, np.max(np.abs(m)))


def test_spectral_radius_examples():
    assert spectral_radius(np.eye(2)) == 1.0
    assert spectral_radius(np.zeros((2, 2))) == 0.0
    # complex pair: |lambda|^2 = det
    assert math.isclose(spectral_radius(EX1_CLOSED_LOOP), math.sqrt(0.9522), rel_tol=1e-12)


@settings(max_examples=100, deadline=None)
@given(arrays(np.float64, (2, 2), elements=st.floats(-5, 5)), st.floats(-4, 4))
def test_spectral_radius_scales(m, c):
    assert abs(spectral_radius(c * m) - abs(c) * spectral_radius(m)) <= 1e-9 * max(1.0, abs(c) * np.max(np.abs(m)))


def test_is_schur():
    assert is_schur(EX1_CLOSED_LOOP)
    assert not is_schur(np.eye(2))
    assert not is_schur(np.diag([1.01, 0.0]))


def test_matrix_rank():
    assert matrix_rank(np.eye(3)) == 3
    assert matrix_rank(np.array([[1.0, 2.0], [2.0, 4.0]])) == 1
    assert matrix_rank(np.zeros((6, 3))) == 0
    assert matrix_rank(np.vstack([np.eye(3), np.eye(3)])) == 3


@pytest.mark.parametrize("seed", range(5))
def test_expm_matches_scipy(seed):
    m = np.random.default_rng(seed).normal(size=(4, 4)) * 3
    np.testing.assert_allclose(expm(m), scipy.linalg.expm(m), rtol=1e-11, atol=1e-12)


def test_zoh_double_integrator():
    T = 0.37
    A_d, B_d = zoh_discretize(np.array([[0.0, 1.0], [0.0, 0.0]]), np.array([[0.0], [1.0]]), T)
    np.testing.assert_allclose(A_d, [[1.0, T], [0.0, 1.0]], atol=1e-15)
    np.testing.assert_allclose(B_d, [[T * T / 2], [T]], atol=1e-15)


def test_zoh_zero_dynamics():
    b = np.array([[1.5], [-2.0]])
    A_d, B_d = zoh_discretize(np.zeros((2, 2)), b, 0.2)
    np.testing.assert_array_equal(A_d, np.eye(2))
    np.testing.assert_allclose(B_d, 0.2 * b, atol=1e-16)


def test_zoh_rejects_nan():
    with pytest.raises(NonFinite):
        zoh_discretize(np.array([[np.nan, 0], [0, 0]]), np.zeros((2, 1)), 0.1)


def rk4_zoh_oracle(A_c, B_c, T, dt=1e-7):
    """Integrate dPhi/dt = A_c Phi and dGamma/dt = A_c Gamma + B_c over [0, T] with RK4."""
    n, m = B_c.shape
    state = np.hstack([np.eye(n), np.zeros((n, m))])

    def f(s):
        return np.hstack([A_c @ s[:, :n], A_c @ s[:, n:] + B_c])

    for _ in range(int(round(T / dt))):
        k1 = f(state)
        k2 = f(state + dt / 2 * k1)
        k3 = f(state + dt / 2 * k2)
        k4 = f(state + dt * k3)
        state = state + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return state[:, :n], state[:, n:]


def test_zoh_pmdc_against_fine_step_integration():
    A_c, b_u, b_d = pmdc_continuous()
    B_c = np.hstack([b_u, b_d])
    A_d, B_d = zoh_discretize(A_c, B_c, PMDC_PERIOD)
    A_ref, B_ref = rk4_zoh_oracle(A_c, B_c, PMDC_PERIOD)
    assert np.max(np.abs(A_d - A_ref)) <= 1e-6
    assert np.max(np.abs(B_d - B_ref)) <= 1e-6


@settings(max_examples=50, deadline=None)
@given(st.floats(1e-4, 5e-3), st.floats(1e-4, 5e-3))
def test_zoh_semigroup(t1, t2):
    A_c, b_u, _ = pmdc_continuous()
    A12, _ = zoh_discretize(A_c, b_u, t1 + t2)
    A1, _ = zoh_discretize(A_c, b_u, t1)
    A2, _ = zoh_discretize(A_c, b_u, t2)
    assert np.max(np.abs(A12 - A1 @ A2)) <= 1e-9


def test_euler_keeps_input_zero_pattern():
    A_c, b_u, _ = pmdc_continuous()
    A_d, B_d = euler_discretize(A_c, b_u, 0.001)
    assert B_d[0, 0] == 0.0
    np.testing.assert_allclose(A_d, np.eye(2) + 0.001 * A_c)
