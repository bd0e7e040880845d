"""Unitary error bases, their duality with entangled bases, and the
monomiality obstruction.

A unitary error basis of order n is a set of n^2 unitaries that is orthonormal
under the normalized trace inner product: tr(U_i* U_j) = n when i = j and 0
otherwise.  Members are stored as an (n^2, n, n) stack; the member built from
label (i, j) sits at index i*n + j, matching the basis layout in
:mod:`qlsmub.bases`.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bases import BipartiteBasis, MubReport, extract_unitary
from .hadamard import HadamardFamily
from .numerics import DEFAULT_TOL, OBSTRUCTION_THRESHOLD, lcm_up_to, mat_power
from .squares import QuantumLatinSquare


class UnitaryErrorBasis:
    """Validated stack of n^2 trace-orthogonal unitaries of size n x n."""

    __slots__ = ("n", "members")

    def __init__(self, n: int, members):
        arr = np.asarray(members, dtype=np.complex128)
        if arr.shape != (n * n, n, n):
            raise ValueError(
                f"expected {n * n} matrices of size {n}x{n}, got shape {arr.shape}"
            )
        arr = arr.copy()
        arr.setflags(write=False)
        self.n = n
        self.members = arr

    def member(self, i: int, j: int) -> np.ndarray:
        return self.members[i * self.n + j]

    def __len__(self) -> int:
        return self.members.shape[0]

    def __repr__(self) -> str:
        return f"UnitaryErrorBasis(n={self.n})"


@dataclass(frozen=True)
class UebViolation:
    """First failed axiom of a candidate member stack.

    kind: "count" (not n^2 square matrices of one size), "non-unitary"
    (member ``index``), or "trace-orthogonality" (member pair ``pair`` whose
    trace inner product ``value`` is off).
    """

    kind: str
    index: int | None = None
    pair: tuple[int, int] | None = None
    value: complex | None = None

    def __str__(self) -> str:
        if self.kind == "count":
            return "member stack is not n^2 square matrices of a single size"
        if self.kind == "non-unitary":
            return (
                f"member {self.index}: U*U differs from I by {abs(self.value):.3e}"
            )
        return (
            f"members {self.pair}: tr(U*V) = {self.value:.6g}, "
            "expected n on the diagonal and 0 off it"
        )


def validate_ueb(members, tol: float = DEFAULT_TOL):
    """Check member count, unitarity, and trace orthogonality.

    Accepts an (n^2, n, n) array-like or a sequence of n^2 square matrices.
    Returns a :class:`UnitaryErrorBasis` or the first :class:`UebViolation`.
    """
    if isinstance(members, UnitaryErrorBasis):
        members = members.members
    try:
        arr = np.asarray(members, dtype=np.complex128)
    except (ValueError, TypeError):
        return UebViolation("count")
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        return UebViolation("count")
    n = arr.shape[1]
    if arr.shape[0] != n * n:
        return UebViolation("count")
    if not np.isfinite(arr).all():
        return UebViolation("count")

    eye = np.eye(n)
    for idx in range(n * n):
        defect = np.abs(arr[idx].conj().T @ arr[idx] - eye).max()
        if defect > tol:
            return UebViolation("non-unitary", index=idx, value=complex(defect))

    # Gram of the trace inner product, built in one contraction.
    gram = np.einsum("iab,jab->ij", arr.conj(), arr)
    defect = np.abs(gram - n * np.eye(n * n)) > tol
    if defect.any():
        flat = int(np.argmax(defect))
        i, j = divmod(flat, n * n)
        return UebViolation("trace-orthogonality", pair=(i, j), value=complex(gram[i, j]))

    return UnitaryErrorBasis(n, arr)


def meb_to_ueb(basis: BipartiteBasis, tol: float = DEFAULT_TOL) -> UnitaryErrorBasis:
    """Extract the defining unitary of every basis state.

    Propagates the not-maximally-entangled error of :func:`extract_unitary`.
    The resulting stack is trace-orthogonal exactly when the states were
    orthogonal, so the result is returned without revalidation.
    """
    n = basis.n
    members = np.empty((n * n, n, n), dtype=np.complex128)
    for s in range(n * n):
        members[s] = extract_unitary(basis.states[s], tol)
    return UnitaryErrorBasis(n, members)


def ueb_to_meb(u: UnitaryErrorBasis) -> BipartiteBasis:
    """The basis whose state for member U is (1/sqrt(n)) sum_k |k> (x) U|k>."""
    n = u.n
    scale = 1.0 / math.sqrt(n)
    # state[k*n + p] = U[p, k] / sqrt(n)
    states = np.transpose(u.members, (0, 2, 1)).reshape(n * n, n * n) * scale
    return BipartiteBasis(n, states)


def shift_multiply_ueb(
    q: QuantumLatinSquare, family: HadamardFamily
) -> UnitaryErrorBasis:
    """Shift-and-multiply basis: member (i, j) = sum_k H_j[k, i] |grid(j, k)><k|.

    Column k of the member is the grid vector at (row j, column k) scaled by
    the (k, i) phase of the j-th family member.  Coincides with
    meb_to_ueb(qls_meb(q, family)) entry for entry.
    """
    n = q.n
    if family.n != n:
        raise ValueError(f"order mismatch: square {n}, family {family.n}")
    members = np.empty((n * n, n, n), dtype=np.complex128)
    for j in range(n):
        h = family[j].mat
        vecs = q.grid.array[j]  # (k, p)
        members[j::n] = np.einsum("ki,kp->ipk", h, vecs)
    return UnitaryErrorBasis(n, members)


def check_mu_ueb(
    u: UnitaryErrorBasis, v: UnitaryErrorBasis, tol: float = DEFAULT_TOL
) -> MubReport:
    """Mutual unbiasedness of two unitary error bases.

    Passes iff every |tr(U_i* V_j)/n|^2 is within tol of 1/n^2, the value the
    dual entangled bases give.  The report's ``trace_sq`` carries the raw
    |tr(U_i* V_j)|^2 values for inspection against the stricter normalization
    some conventions use.
    """
    if u.n != v.n:
        raise ValueError(f"order mismatch: {u.n} vs {v.n}")
    n = u.n
    traces = np.einsum("iab,jab->ij", u.members.conj(), v.members)
    raw_sq = np.abs(traces) ** 2
    sq = raw_sq / (n * n)
    dim = n * n
    passed = bool(np.abs(sq - 1.0 / dim).max() <= tol)
    return MubReport(
        dim=dim,
        min_sq=float(sq.min()),
        max_sq=float(sq.max()),
        mean_sq=float(sq.mean()),
        passed=passed,
        tol=tol,
        trace_sq=raw_sq,
    )


@dataclass(frozen=True)
class ObstructionReport:
    """Outcome of the monomiality obstruction sweep.

    The basis is translated so the member at ``normalizer_index`` becomes the
    identity, every translated member is raised to the power ``mu`` (the lcm
    of 1..n), and all pairwise commutators of the powers are measured in
    Frobenius norm.  A monomial basis always yields commuting powers, so
    ``worst_norm`` above the threshold proves the basis is not equivalent to
    a monomial one by this route.  ``sample_entry`` is the (0, 0) entry of the
    worst commutator.
    """

    mu: int
    normalizer_index: int
    worst_pair: tuple[int, int]
    worst_norm: float
    sample_entry: complex
    obstructed: bool
    threshold: float


def _commutator_norms(powers: np.ndarray, pairs: list[tuple[int, int]]) -> list[float]:
    out = []
    for i, j in pairs:
        comm = powers[i] @ powers[j] - powers[j] @ powers[i]
        out.append(float(np.linalg.norm(comm)))
    return out


def monomial_obstruction(
    u: UnitaryErrorBasis,
    threshold: float = OBSTRUCTION_THRESHOLD,
    normalizer: int = 0,
    jobs: int = 1,
) -> ObstructionReport:
    """Sweep all pairwise commutators of mu-th powers of the translated basis.

    ``normalizer`` picks the member whose inverse right-translates the basis
    before powering.  The worst pair is selected by norm with lexicographic
    tie-break, so the result does not depend on ``jobs``.
    """
    n = u.n
    count = n * n
    if not 0 <= normalizer < count:
        raise ValueError(f"normalizer index {normalizer} out of range 0..{count - 1}")
    mu = lcm_up_to(n)
    anchor = u.members[normalizer].conj().T
    translated = u.members @ anchor
    powers = np.empty_like(translated)
    for s in range(count):
        powers[s] = mat_power(translated[s], mu)

    pairs = list(combinations(range(count), 2))
    if jobs > 1 and len(pairs) > 1:
        chunk = max(1, math.ceil(len(pairs) / (jobs * 4)))
        chunks = [pairs[c : c + chunk] for c in range(0, len(pairs), chunk)]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            norm_chunks = list(
                pool.map(lambda ch: _commutator_norms(powers, ch), chunks)
            )
        norms = [x for ch in norm_chunks for x in ch]
    else:
        norms = _commutator_norms(powers, pairs)

    worst_pair = pairs[0]
    worst_norm = norms[0]
    for pair, norm in zip(pairs, norms):
        if norm > worst_norm:
            worst_pair, worst_norm = pair, norm
    i, j = worst_pair
    comm = powers[i] @ powers[j] - powers[j] @ powers[i]
    return ObstructionReport(
        mu=mu,
        normalizer_index=normalizer,
        worst_pair=worst_pair,
        worst_norm=worst_norm,
        sample_entry=complex(comm[0, 0]),
        obstructed=bool(worst_norm > threshold),
        threshold=threshold,
    )
