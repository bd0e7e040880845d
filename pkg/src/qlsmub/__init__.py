"""Quantum Latin squares, complex Hadamards, maximally entangled bases, and
mutual-unbiasedness checks."""

from .bases import (
    BipartiteBasis,
    MubReport,
    PhaseMatch,
    bases_match_up_to_phase,
    check_mub,
    extract_unitary,
    is_maximally_entangled,
    is_orthonormal_basis,
    lbw_meb,
    qls_meb,
)
from .fixtures import (
    FIXTURE_NAMES,
    block_square_grid,
    corrected_triple,
    fixture,
    fourier_triple,
    hadamard_9_corrected,
    hadamard_9_printed,
    paper_p_grid,
    paper_q_grid,
    printed_triple,
    random_orthonormal_triple,
)
from .hadamard import (
    HadamardFamily,
    HadamardMatrix,
    HadamardViolation,
    constant_family,
    fourier,
    hadamard_family,
    random_hadamard,
    tensor_hadamard,
    validate_hadamard,
)
from .numerics import (
    DEFAULT_TOL,
    OBSTRUCTION_THRESHOLD,
    frobenius_distance,
    is_monomial,
    is_permutation_matrix,
    kron,
    lcm_up_to,
    mat_power,
    partial_trace_second,
)
from .search import (
    EnumerationResult,
    EquivalenceReport,
    cross_validate_lemma16,
    enumerate_latin,
    find_orthogonal_pairs,
)
from .squares import (
    GridViolation,
    LatinSquare,
    QuantumLatinSquare,
    VectorGrid,
    WeakOrthFailure,
    WeakOrthWitness,
    are_left_orthogonal,
    are_orthogonal,
    as_latin_square,
    computational_grid,
    is_moqls,
    left_conjugate,
    orthogonality_map,
    transpose,
    validate_qls,
    weak_orth_witness,
)
from .ueb import (
    ObstructionReport,
    UebViolation,
    UnitaryErrorBasis,
    check_mu_ueb,
    meb_to_ueb,
    monomial_obstruction,
    shift_multiply_ueb,
    ueb_to_meb,
    validate_ueb,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteBasis",
    "DEFAULT_TOL",
    "EnumerationResult",
    "EquivalenceReport",
    "FIXTURE_NAMES",
    "GridViolation",
    "HadamardFamily",
    "HadamardMatrix",
    "HadamardViolation",
    "LatinSquare",
    "MubReport",
    "OBSTRUCTION_THRESHOLD",
    "ObstructionReport",
    "PhaseMatch",
    "QuantumLatinSquare",
    "UebViolation",
    "UnitaryErrorBasis",
    "VectorGrid",
    "WeakOrthFailure",
    "WeakOrthWitness",
    "are_left_orthogonal",
    "are_orthogonal",
    "as_latin_square",
    "bases_match_up_to_phase",
    "block_square_grid",
    "check_mu_ueb",
    "check_mub",
    "computational_grid",
    "constant_family",
    "corrected_triple",
    "cross_validate_lemma16",
    "enumerate_latin",
    "extract_unitary",
    "find_orthogonal_pairs",
    "fixture",
    "fourier",
    "fourier_triple",
    "frobenius_distance",
    "hadamard_9_corrected",
    "hadamard_9_printed",
    "hadamard_family",
    "is_maximally_entangled",
    "is_monomial",
    "is_moqls",
    "is_orthonormal_basis",
    "is_permutation_matrix",
    "kron",
    "lbw_meb",
    "lcm_up_to",
    "left_conjugate",
    "mat_power",
    "meb_to_ueb",
    "monomial_obstruction",
    "orthogonality_map",
    "paper_p_grid",
    "paper_q_grid",
    "partial_trace_second",
    "printed_triple",
    "qls_meb",
    "random_hadamard",
    "random_orthonormal_triple",
    "shift_multiply_ueb",
    "tensor_hadamard",
    "transpose",
    "ueb_to_meb",
    "validate_hadamard",
    "validate_qls",
    "validate_ueb",
    "weak_orth_witness",
]
