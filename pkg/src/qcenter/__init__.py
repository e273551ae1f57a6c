"""Center of the small quantum groups u_q(sl2) and u_q(sl3) at odd roots of unity."""

from .blocks import (
    NonIntegralError,
    OrbitRecord,
    center_dimension_formula,
    dot_action,
    orbit_counts,
    orbits,
    solve_parabolic_dim,
)
from .center import (
    CenterBasis,
    CenterPipeline,
    CentralizerChainReport,
    InconsistencyError,
    center_basis,
    centralizer_chain,
    verify_center,
    widened_k_centralizer_check,
)
from .cyclotomic import CycNum, CyclotomicField, PrimeFieldSpec, find_prime_spec, q_integer
from .linalg import PrimeField, SparseMatrix, Subspace, kernel, lift_to_exact, rank, restrict
from .pbw import AlgebraElement, AlgebraKind, PBWAlgebra, check_serre, enumerate_weight_space

__version__ = "0.1.0"

__all__ = [
    "NonIntegralError", "OrbitRecord", "center_dimension_formula", "dot_action",
    "orbit_counts", "orbits", "solve_parabolic_dim",
    "CenterBasis", "CenterPipeline", "CentralizerChainReport", "InconsistencyError",
    "center_basis", "centralizer_chain", "verify_center", "widened_k_centralizer_check",
    "CycNum", "CyclotomicField", "PrimeFieldSpec", "find_prime_spec", "q_integer",
    "PrimeField", "SparseMatrix", "Subspace", "kernel", "lift_to_exact", "rank", "restrict",
    "AlgebraElement", "AlgebraKind", "PBWAlgebra", "check_serre", "enumerate_weight_space",
]
