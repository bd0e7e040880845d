"""Quantum Latin squares, Latin squares, and their orthogonality notions.

Storage convention, used everywhere in this package: a grid is an n x n array
of length-n complex vectors addressed as ``entry(row, col)``.  A Latin square
is the special case whose entries are computational basis vectors; it is kept
as an integer table ``cells[row, col]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .numerics import DEFAULT_TOL


class VectorGrid:
    """Square array of complex vectors, shape (n, n, n): (row, col, component)."""

    __slots__ = ("array",)

    def __init__(self, array):
        arr = np.asarray(array, dtype=np.complex128)
        if arr.ndim != 3 or len(set(arr.shape)) != 1:
            raise ValueError(f"expected an (n, n, n) array, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("grid contains NaN or Inf entries")
        arr = arr.copy()
        arr.setflags(write=False)
        self.array = arr

    @property
    def n(self) -> int:
        return self.array.shape[0]

    def entry(self, row: int, col: int) -> np.ndarray:
        return self.array[row, col]

    def row(self, row: int) -> np.ndarray:
        return self.array[row]

    def __repr__(self) -> str:
        return f"VectorGrid(n={self.n})"


class LatinSquare:
    """Integer table where every row and column is a permutation of 0..n-1."""

    __slots__ = ("cells",)

    def __init__(self, cells):
        arr = np.asarray(cells, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError(f"expected a square table, got shape {arr.shape}")
        n = arr.shape[0]
        target = np.arange(n)
        for r in range(n):
            if not np.array_equal(np.sort(arr[r]), target):
                raise ValueError(f"row {r} is not a permutation of 0..{n - 1}")
        for c in range(n):
            if not np.array_equal(np.sort(arr[:, c]), target):
                raise ValueError(f"column {c} is not a permutation of 0..{n - 1}")
        arr = arr.copy()
        arr.setflags(write=False)
        self.cells = arr

    @property
    def n(self) -> int:
        return self.cells.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatinSquare):
            return NotImplemented
        return self.cells.shape == other.cells.shape and bool(
            np.array_equal(self.cells, other.cells)
        )

    def __hash__(self) -> int:
        return hash((self.cells.shape[0], self.cells.tobytes()))

    def __repr__(self) -> str:
        return f"LatinSquare({self.cells.tolist()!r})"


def computational_grid(latin: LatinSquare) -> VectorGrid:
    """The vector grid whose entry at (r, c) is the basis vector |cells[r, c]>."""
    n = latin.n
    arr = np.zeros((n, n, n), dtype=np.complex128)
    rows, cols = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    arr[rows, cols, latin.cells] = 1.0
    return VectorGrid(arr)


@dataclass(frozen=True, eq=False)
class QuantumLatinSquare:
    """A grid whose rows and columns are orthonormal bases of C^n.

    Build via :func:`validate_qls`; ``tol`` records the tolerance it passed at.
    """

    grid: VectorGrid
    tol: float = DEFAULT_TOL

    @property
    def n(self) -> int:
        return self.grid.n


@dataclass(frozen=True)
class GridViolation:
    """First orthonormality defect found while scanning rows then columns.

    ``pair`` indexes the two vectors of the offending line whose Gram entry
    ``value`` differs from the identity's.
    """

    line: str  # "row" or "column"
    index: int
    pair: tuple[int, int]
    value: complex

    def __str__(self) -> str:
        u, v = self.pair
        expected = 1.0 if u == v else 0.0
        return (
            f"{self.line} {self.index} is not orthonormal: "
            f"<v{u}|v{v}> = {self.value:.6g}, expected {expected}"
        )


def _first_line_defect(vectors: np.ndarray, tol: float):
    # vectors: (n, n) stack of one line's entries.  Returns the first (u, v)
    # in row-major order where the Gram matrix leaves the identity.
    n = vectors.shape[0]
    gram = vectors.conj() @ vectors.T
    defect = np.abs(gram - np.eye(n)) > tol
    if not defect.any():
        return None
    flat = int(np.argmax(defect))
    u, v = divmod(flat, n)
    return (u, v), complex(gram[u, v])


def validate_qls(grid: VectorGrid, tol: float = DEFAULT_TOL):
    """Check that every row and column of the grid is an orthonormal basis.

    Returns a :class:`QuantumLatinSquare` on success, else a
    :class:`GridViolation` for the first defect (rows 0..n-1 scanned first,
    then columns).
    """
    n = grid.n
    for r in range(n):
        hit = _first_line_defect(grid.array[r], tol)
        if hit is not None:
            return GridViolation("row", r, hit[0], hit[1])
    for c in range(n):
        hit = _first_line_defect(grid.array[:, c], tol)
        if hit is not None:
            return GridViolation("column", c, hit[0], hit[1])
    return QuantumLatinSquare(grid, tol)


def as_latin_square(grid: VectorGrid, tol: float = DEFAULT_TOL) -> LatinSquare | None:
    """Recover the integer table if every entry is literally a basis vector.

    Each entry must be within tol of some |k> componentwise (phase included),
    and the resulting table must be Latin.  Returns None otherwise.
    """
    n = grid.n
    cells = np.empty((n, n), dtype=np.int64)
    eye = np.eye(n)
    for r in range(n):
        for c in range(n):
            v = grid.array[r, c]
            k = int(np.argmax(np.abs(v)))
            if np.abs(v - eye[k]).max() > tol:
                return None
            cells[r, c] = k
    try:
        return LatinSquare(cells)
    except ValueError:
        return None


def left_conjugate(latin: LatinSquare) -> LatinSquare:
    """Left-division table of the square.

    The constructions in this package consume a grid column-first: the cell at
    (row b, column a) is read as the product a * b.  Left division solves
    a * x = s for x, so the conjugate table holds ``out[s, a] = b`` exactly
    when ``cells[b, a] = s``: each column's row-to-symbol map is inverted.
    Applying the operation twice returns the original square.
    """
    n = latin.n
    out = np.empty((n, n), dtype=np.int64)
    out[latin.cells, np.arange(n)[None, :]] = np.arange(n)[:, None]
    return LatinSquare(out)


def transpose(latin: LatinSquare) -> LatinSquare:
    """Swap rows and columns."""
    return LatinSquare(latin.cells.T)


def orthogonality_map(a: LatinSquare, b: LatinSquare) -> np.ndarray:
    """The 0/1 matrix sending each cell to its ordered symbol pair.

    Row index r*n + c runs over cells; column index a[r,c]*n + b[r,c] over
    symbol pairs.  The map is a permutation matrix exactly when all n^2
    ordered pairs are distinct.
    """
    if a.n != b.n:
        raise ValueError(f"order mismatch: {a.n} vs {b.n}")
    n = a.n
    mat = np.zeros((n * n, n * n), dtype=np.complex128)
    rows = np.arange(n * n)
    cols = a.cells.ravel() * n + b.cells.ravel()
    mat[rows, cols] = 1.0
    return mat


def are_orthogonal(a: LatinSquare, b: LatinSquare) -> bool:
    """True iff the n^2 ordered symbol pairs (a[r,c], b[r,c]) are all distinct."""
    if a.n != b.n:
        raise ValueError(f"order mismatch: {a.n} vs {b.n}")
    n = a.n
    codes = a.cells.ravel() * n + b.cells.ravel()
    return len(np.unique(codes)) == n * n


def are_left_orthogonal(a: LatinSquare, b: LatinSquare) -> bool:
    """True iff the left conjugates of a and b are orthogonal."""
    return are_orthogonal(left_conjugate(a), left_conjugate(b))


@dataclass(frozen=True)
class WeakOrthWitness:
    """Success record: ``table[i, j]`` is the unique column where row i of the
    first grid and row j of the second have componentwise inner product 1."""

    n: int
    table: np.ndarray


@dataclass(frozen=True)
class WeakOrthFailure:
    """First row pair whose componentwise inner products are not n-1 zeros
    plus a single exact 1.

    kind: "stray-value" (a product near neither 0 nor 1, at ``column``),
    "non-unique-unit" (a second unit product, at ``column``), or
    "missing-unit" (all products near 0; ``column`` is None).
    """

    q_row: int
    p_row: int
    kind: str
    column: int | None
    value: complex | None

    def __str__(self) -> str:
        where = f"rows ({self.q_row}, {self.p_row})"
        if self.kind == "missing-unit":
            return f"{where}: no columnwise inner product equals 1"
        return (
            f"{where}: column {self.column} product {self.value:.6g} "
            f"({self.kind})"
        )


def _grid_of(g) -> VectorGrid:
    if isinstance(g, QuantumLatinSquare):
        return g.grid
    if isinstance(g, VectorGrid):
        return g
    if isinstance(g, LatinSquare):
        return computational_grid(g)
    raise TypeError(f"expected a grid, got {type(g).__name__}")


def weak_orth_witness(q, p, tol: float = DEFAULT_TOL):
    """Row-pair witness for weak orthogonality of two grids.

    For every pair (row i of q, row j of p) the n columnwise inner products
    <q[i,k]|p[j,k]> must consist of n-1 zeros and a single entry equal to 1,
    phase included.  Returns the table of unit positions as a
    :class:`WeakOrthWitness`, or a :class:`WeakOrthFailure` for the first
    violating (i, j, k) in lexicographic order.

    Order 1 is degenerate and always succeeds with table [[0]].
    """
    qg, pg = _grid_of(q), _grid_of(p)
    if qg.n != pg.n:
        raise ValueError(f"order mismatch: {qg.n} vs {pg.n}")
    n = qg.n
    if n == 1:
        return WeakOrthWitness(1, np.zeros((1, 1), dtype=np.int64))

    # prods[i, j, k] = <q[i,k] | p[j,k]>
    prods = np.einsum("ikc,jkc->ijk", qg.array.conj(), pg.array)
    near_one = np.abs(prods - 1.0) <= tol
    near_zero = np.abs(prods) <= tol

    table = np.full((n, n), -1, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            unit_at = -1
            for k in range(n):
                if near_one[i, j, k]:
                    if unit_at >= 0:
                        return WeakOrthFailure(
                            i, j, "non-unique-unit", k, complex(prods[i, j, k])
                        )
                    unit_at = k
                elif not near_zero[i, j, k]:
                    return WeakOrthFailure(
                        i, j, "stray-value", k, complex(prods[i, j, k])
                    )
            if unit_at < 0:
                return WeakOrthFailure(i, j, "missing-unit", None, None)
            table[i, j] = unit_at
    return WeakOrthWitness(n, table)


def is_moqls(family, tol: float = DEFAULT_TOL) -> bool:
    """True iff every unordered pair of grids in the family has a weak
    orthogonality witness."""
    grids = [_grid_of(g) for g in family]
    if len(grids) < 2:
        raise ValueError("a mutually orthogonal family needs at least two members")
    for a, b in combinations(grids, 2):
        if not isinstance(weak_orth_witness(a, b, tol), WeakOrthWitness):
            return False
    return True
