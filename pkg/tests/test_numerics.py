import numpy as np
import pytest
from numpy.testing import assert_allclose

from qlsmub.numerics import (
    DEFAULT_TOL,
    as_complex_matrix,
    density_of,
    frobenius_distance,
    is_density_matrix,
    is_monomial,
    is_permutation_matrix,
    kron,
    lcm_up_to,
    mat_power,
    partial_trace_second,
    random_unitary,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)


def bell() -> np.ndarray:
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1 / np.sqrt(2)
    return v


def test_kron_identities():
    assert_allclose(kron(np.eye(2), np.eye(2)), np.eye(4))
    top = kron(X, np.eye(2))
    assert_allclose(top[:2, 2:], np.eye(2))
    assert_allclose(top[:2, :2], np.zeros((2, 2)))


def test_kron_associative():
    rng = np.random.default_rng(0)
    a, b, c = (rng.integers(-3, 4, (2, 2)) for _ in range(3))
    assert_allclose(kron(kron(a, b), c), kron(a, kron(b, c)))


def test_partial_trace_bell_is_maximally_mixed():
    assert_allclose(partial_trace_second(density_of(bell()), 2), np.eye(2) / 2)


def test_partial_trace_product_state():
    v = np.zeros(4, dtype=complex)
    v[0] = 1.0  # |0>|0>
    expected = np.zeros((2, 2))
    expected[0, 0] = 1.0
    assert_allclose(partial_trace_second(density_of(v), 2), expected)


def test_partial_trace_preserves_trace():
    rng = np.random.default_rng(1)
    psi = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    psi /= np.linalg.norm(psi)
    reduced = partial_trace_second(density_of(psi), 3)
    assert abs(np.trace(reduced) - 1.0) < 1e-12


def test_partial_trace_dimension_mismatch():
    with pytest.raises(ValueError):
        partial_trace_second(np.eye(6), 2)


def test_partial_trace_of_spread_unitary_state():
    # (1/sqrt(n)) sum_k |k>(x)U|k> always reduces to I/n
    rng = np.random.default_rng(2)
    n = 5
    u = random_unitary(n, rng)
    state = (u.T / np.sqrt(n)).reshape(-1)
    assert_allclose(partial_trace_second(density_of(state), n), np.eye(n) / n, atol=1e-12)


def test_mat_power_small_cases():
    assert_allclose(mat_power(X, 0), np.eye(2))
    assert_allclose(mat_power(X, 5), X)
    d = np.diag(np.exp(2j * np.pi * np.arange(4) / 4))
    assert_allclose(mat_power(d, 4), np.eye(4), atol=1e-14)


def test_mat_power_matches_numpy_reference():
    rng = np.random.default_rng(3)
    u = random_unitary(4, rng)
    for e in (1, 2, 7, 63, 2520):
        assert_allclose(mat_power(u, e), np.linalg.matrix_power(u, e), atol=1e-9)


def test_mat_power_additivity():
    rng = np.random.default_rng(4)
    u = random_unitary(3, rng)
    assert_allclose(mat_power(u, 13) @ mat_power(u, 29), mat_power(u, 42), atol=1e-12)


def test_mat_power_unitary_stability():
    # powering to the lcm exponent must not drift off the unitary group
    rng = np.random.default_rng(5)
    for _ in range(5):
        u = random_unitary(9, rng)
        p = mat_power(u, 2520)
        assert frobenius_distance(p @ p.conj().T, np.eye(9)) <= 1e-10


def test_mat_power_rejects_bad_input():
    with pytest.raises(ValueError):
        mat_power(np.ones((2, 3)), 2)
    with pytest.raises(ValueError):
        mat_power(np.eye(2), -1)


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (4, 12), (6, 60), (9, 2520)])
def test_lcm_up_to(n, expected):
    assert lcm_up_to(n) == expected


def test_is_permutation_matrix():
    assert is_permutation_matrix(np.eye(3))
    assert not is_permutation_matrix(np.array([[1, 1], [0, 0]], dtype=complex))
    assert not is_permutation_matrix(np.diag([1, -1]).astype(complex))  # phase matters
    perm = np.zeros((4, 4), dtype=complex)
    for k, p in enumerate([2, 0, 3, 1]):
        perm[p, k] = 1
    assert is_permutation_matrix(perm)
    assert is_permutation_matrix(perm + 1e-12)
    assert not is_permutation_matrix(perm + 1e-6)


def test_is_monomial():
    assert is_monomial(np.diag([1j, -1.0]))
    assert not is_monomial(np.ones((2, 2)))
    assert is_monomial(np.array([[0, 2], [3, 0]], dtype=complex))


def test_permutation_implies_monomial():
    rng = np.random.default_rng(6)
    for _ in range(20):
        n = int(rng.integers(1, 7))
        perm = np.zeros((n, n), dtype=complex)
        perm[rng.permutation(n), np.arange(n)] = 1
        assert is_permutation_matrix(perm)
        assert is_monomial(perm)


def test_frobenius_distance():
    assert frobenius_distance(np.eye(2), np.eye(2)) == 0.0
    assert_allclose(frobenius_distance(np.eye(2), X), 2.0)
    with pytest.raises(ValueError):
        frobenius_distance(np.eye(2), np.eye(3))


def test_is_density_matrix():
    assert is_density_matrix(np.eye(2) / 2)
    assert is_density_matrix(density_of(bell()))
    assert not is_density_matrix(np.eye(2))  # trace 2
    assert not is_density_matrix(np.array([[0.5, 0.5j], [0.5j, 0.5]]))  # not Hermitian
    assert not is_density_matrix(np.diag([1.5, -0.5]).astype(complex))  # negative


def test_as_complex_matrix_rejects_non_finite():
    with pytest.raises(ValueError):
        as_complex_matrix(np.array([[np.nan, 0], [0, 1]]))


def test_random_unitary_is_unitary():
    rng = np.random.default_rng(7)
    u = random_unitary(6, rng)
    assert_allclose(u @ u.conj().T, np.eye(6), atol=1e-12)
