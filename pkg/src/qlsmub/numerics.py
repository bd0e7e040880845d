"""Dense complex linear algebra helpers shared by the rest of the package.

Everything operates on plain numpy arrays with ``complex128`` entries and is
pure: inputs are never mutated.  Tolerances are absolute unless stated
otherwise.
"""

from __future__ import annotations

import math

import numpy as np

# Absolute tolerance for the structural predicates (Gram checks,
# permutation / monomial tests, orthonormality).
DEFAULT_TOL = 1e-9

# Commutator norms above this count as a genuine obstruction; the numerical
# noise floor of the power sweep sits far below (~1e-10).
OBSTRUCTION_THRESHOLD = 1e-6


def as_complex_matrix(m) -> np.ndarray:
    """Coerce to a 2-D complex128 array, rejecting non-finite entries."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise ValueError(f"expected a matrix, got an array of ndim {arr.ndim}")
    if not np.isfinite(arr).all():
        raise ValueError("matrix contains NaN or Inf entries")
    return arr


def as_state_vector(v) -> np.ndarray:
    """Coerce to a 1-D complex128 array, rejecting non-finite entries."""
    arr = np.asarray(v, dtype=np.complex128).ravel()
    if arr.size == 0:
        raise ValueError("empty state vector")
    if not np.isfinite(arr).all():
        raise ValueError("state vector contains NaN or Inf entries")
    return arr


def kron(a, b) -> np.ndarray:
    """Kronecker product with complex128 output."""
    return np.kron(
        np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128)
    )


def density_of(state) -> np.ndarray:
    """Rank-one projector |s><s| of a state vector."""
    s = as_state_vector(state)
    return np.outer(s, s.conj())


def partial_trace_second(rho, n: int) -> np.ndarray:
    """Trace out the second factor of a C^n (x) C^n density matrix.

    ``rho`` must be (n^2, n^2) with the composite index k*n + p, k labelling
    the first factor.  Returns the reduced (n, n) matrix; the trace is
    preserved.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    arr = as_complex_matrix(rho)
    d = n * n
    if arr.shape != (d, d):
        raise ValueError(
            f"density matrix shape {arr.shape} does not match n^2 = {d} for n = {n}"
        )
    return np.einsum("kplp->kl", arr.reshape(n, n, n, n))


def mat_power(u, e: int) -> np.ndarray:
    """e-th power of a square matrix by repeated squaring (e >= 0)."""
    arr = as_complex_matrix(u)
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"matrix must be square, got shape {arr.shape}")
    if e < 0:
        raise ValueError(f"exponent must be non-negative, got {e}")
    result = np.eye(arr.shape[0], dtype=np.complex128)
    base = arr
    while e:
        if e & 1:
            result = result @ base
        e >>= 1
        if e:
            base = base @ base
    return result


def lcm_up_to(n: int) -> int:
    """Least common multiple of 1..n."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return math.lcm(*range(1, n + 1))


def is_permutation_matrix(m, tol: float = DEFAULT_TOL) -> bool:
    """True iff every row and column holds a single 1 and zeros elsewhere.

    The unit entry must be +1 (phase included), not merely unimodular.
    """
    arr = as_complex_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        return False
    ones = np.abs(arr - 1.0) <= tol
    zeros = np.abs(arr) <= tol
    if not np.all(ones | zeros):
        return False
    return bool(
        np.all(ones.sum(axis=0) == 1) and np.all(ones.sum(axis=1) == 1)
    )


def is_monomial(m, tol: float = DEFAULT_TOL) -> bool:
    """True iff the matrix has exactly one entry of modulus > tol per row and column."""
    arr = as_complex_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        return False
    support = np.abs(arr) > tol
    return bool(
        np.all(support.sum(axis=0) == 1) and np.all(support.sum(axis=1) == 1)
    )


def frobenius_distance(a, b) -> float:
    """Frobenius norm of the difference of two equal-shape matrices."""
    x = as_complex_matrix(a)
    y = as_complex_matrix(b)
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {y.shape}")
    return float(np.linalg.norm(x - y))


def is_density_matrix(m, tol: float = DEFAULT_TOL) -> bool:
    """Hermitian, unit trace, positive semidefinite (within tol).

    Positivity is screened with the Gershgorin bound first; only when that
    bound is inconclusive is a Hermitian eigenvalue call made.
    """
    arr = as_complex_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        return False
    if np.abs(arr - arr.conj().T).max() > tol:
        return False
    if abs(np.trace(arr) - 1.0) > tol:
        return False
    diag = np.real(np.diag(arr))
    radii = np.abs(arr).sum(axis=1) - np.abs(np.diag(arr))
    if np.min(diag - radii) >= -tol:
        return True
    return bool(np.linalg.eigvalsh(arr).min() >= -tol)


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed n x n unitary (QR of a complex Ginibre matrix)."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))
