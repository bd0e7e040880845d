"""Maximally entangled bases of C^n (x) C^n and mutual unbiasedness.

A bipartite state over C^n (x) C^n is a length n^2 vector with the composite
index k*n + p (k first factor, p second).  A basis stores its n^2 states as
the rows of an (n^2, n^2) array, the state built from label (i, j) sitting at
row i*n + j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hadamard import HadamardFamily, HadamardMatrix
from .numerics import DEFAULT_TOL, as_state_vector, density_of, partial_trace_second
from .squares import LatinSquare, QuantumLatinSquare


class BipartiteBasis:
    """n^2 states of C^n (x) C^n, one per label (i, j), stored row-wise."""

    __slots__ = ("n", "states")

    def __init__(self, n: int, states):
        arr = np.asarray(states, dtype=np.complex128)
        if arr.shape != (n * n, n * n):
            raise ValueError(
                f"expected {n * n} states of dimension {n * n}, got shape {arr.shape}"
            )
        if not np.isfinite(arr).all():
            raise ValueError("basis contains NaN or Inf amplitudes")
        arr = arr.copy()
        arr.setflags(write=False)
        self.n = n
        self.states = arr

    def state(self, i: int, j: int) -> np.ndarray:
        return self.states[i * self.n + j]

    def __repr__(self) -> str:
        return f"BipartiteBasis(n={self.n})"


@dataclass(frozen=True)
class MubReport:
    """Summary of the squared overlaps between two bases.

    ``passed`` is True when every squared overlap is within tol of 1/dim.
    ``trace_sq`` is filled by the unitary-basis check with the raw squared
    trace moduli before normalization; it is None here.
    """

    dim: int
    min_sq: float
    max_sq: float
    mean_sq: float
    passed: bool
    tol: float
    trace_sq: np.ndarray | None = None


@dataclass(frozen=True)
class PhaseMatch:
    """Result of matching two bases state-for-state up to phase.

    When ``matched``, state s of the first basis equals
    ``phases[s]`` times state ``pairing[s]`` of the second.
    """

    matched: bool
    pairing: np.ndarray | None = None
    phases: np.ndarray | None = None


def _states_of(b) -> np.ndarray:
    if isinstance(b, BipartiteBasis):
        return b.states
    arr = np.asarray(b, dtype=np.complex128)
    if arr.ndim != 2:
        raise ValueError(f"expected a stack of states, got ndim {arr.ndim}")
    return arr


def qls_meb(q: QuantumLatinSquare, family: HadamardFamily) -> BipartiteBasis:
    """Maximally entangled basis from a quantum Latin square and a Hadamard family.

    The state with label (i, j) has amplitude at |k, p>:

        (1/sqrt(n)) * H_j[k, i] * <p | grid(j, k)>

    so row j of the grid supplies the vectors and the j-th family member the
    phases.  Requires matching orders.
    """
    n = q.n
    if family.n != n:
        raise ValueError(f"order mismatch: square {n}, family {family.n}")
    states = np.empty((n * n, n * n), dtype=np.complex128)
    scale = 1.0 / math.sqrt(n)
    for j in range(n):
        h = family[j].mat
        vecs = q.grid.array[j]  # (k, p)
        block = np.einsum("ki,kp->ikp", h, vecs) * scale
        states[j::n] = block.reshape(n, n * n)
    return BipartiteBasis(n, states)


def lbw_meb(latin: LatinSquare, h: HadamardMatrix) -> BipartiteBasis:
    """Maximally entangled basis from one Latin square and one Hadamard.

    The state with label (i, j) has amplitude at |k, p>:

        (1/sqrt(n)) * H[i, k] * [cells[p, k] = j]

    placing the k-th phase of row i of H on the unique |k, p> whose cell in
    column k holds symbol j.
    """
    n = latin.n
    if h.n != n:
        raise ValueError(f"order mismatch: square {n}, matrix {h.n}")
    states = np.empty((n * n, n * n), dtype=np.complex128)
    scale = 1.0 / math.sqrt(n)
    for j in range(n):
        mask = (latin.cells.T == j).astype(np.complex128)  # (k, p)
        block = np.einsum("ik,kp->ikp", h.mat, mask) * scale
        states[j::n] = block.reshape(n, n * n)
    return BipartiteBasis(n, states)


def _split_dim(s: np.ndarray) -> int:
    n = math.isqrt(s.size)
    if n * n != s.size:
        raise ValueError(f"state dimension {s.size} is not a perfect square")
    return n


def is_maximally_entangled(state, tol: float = DEFAULT_TOL) -> bool:
    """True iff tracing out the second factor leaves I/n (Frobenius norm, tol)."""
    s = as_state_vector(state)
    n = _split_dim(s)
    reduced = partial_trace_second(density_of(s), n)
    return bool(np.linalg.norm(reduced - np.eye(n) / n) <= tol)


def extract_unitary(state, tol: float = DEFAULT_TOL) -> np.ndarray:
    """The unitary U with |s> = (1/sqrt(n)) sum_k |k> (x) U|k>.

    Concretely U[p, k] = sqrt(n) * s[k*n + p].  Raises ValueError when the
    state is not maximally entangled, naming the partial-trace residual.
    """
    s = as_state_vector(state)
    n = _split_dim(s)
    residual = float(
        np.linalg.norm(partial_trace_second(density_of(s), n) - np.eye(n) / n)
    )
    if residual > tol:
        raise ValueError(
            f"state is not maximally entangled: partial-trace residual "
            f"{residual:.3e} exceeds tol {tol:.3e}"
        )
    return math.sqrt(n) * s.reshape(n, n).T


def is_orthonormal_basis(basis, tol: float = DEFAULT_TOL) -> bool:
    """True iff the states form a complete orthonormal set (Gram within tol of I)."""
    states = _states_of(basis)
    count, dim = states.shape
    if count != dim:
        return False
    gram = states.conj() @ states.T
    return bool(np.abs(gram - np.eye(count)).max() <= tol)


def check_mub(a, b, tol: float = DEFAULT_TOL) -> MubReport:
    """Squared-overlap summary of two equal-dimension bases.

    Passes iff every |<a_s|b_t>|^2 is within tol of 1/dim.
    """
    sa, sb = _states_of(a), _states_of(b)
    if sa.shape[1] != sb.shape[1]:
        raise ValueError(f"dimension mismatch: {sa.shape[1]} vs {sb.shape[1]}")
    dim = sa.shape[1]
    sq = np.abs(sa.conj() @ sb.T) ** 2
    passed = bool(np.abs(sq - 1.0 / dim).max() <= tol)
    return MubReport(
        dim=dim,
        min_sq=float(sq.min()),
        max_sq=float(sq.max()),
        mean_sq=float(sq.mean()),
        passed=passed,
        tol=tol,
    )


def bases_match_up_to_phase(a, b, tol: float = DEFAULT_TOL) -> PhaseMatch:
    """Match states of two bases one-to-one up to unimodular factors.

    Succeeds iff the overlap matrix has exactly one unit-modulus entry per row
    and per column (within tol); the pairing and the unit factors are returned.
    """
    sa, sb = _states_of(a), _states_of(b)
    if sa.shape != sb.shape:
        raise ValueError(f"shape mismatch: {sa.shape} vs {sb.shape}")
    overlaps = sa.conj() @ sb.T
    unit = np.abs(np.abs(overlaps) - 1.0) <= tol
    if not (np.all(unit.sum(axis=1) == 1) and np.all(unit.sum(axis=0) == 1)):
        return PhaseMatch(False)
    pairing = np.argmax(unit, axis=1)
    # overlaps[s, t] = <a_s|b_t> = conj(factor), so conjugate to make
    # a_s = phases[s] * b_t hold as documented
    phases = overlaps[np.arange(len(pairing)), pairing].conj()
    return PhaseMatch(True, pairing, phases)
