"""Exact algebra of Diophantine tuples and the 2x2x2 hyperdeterminant."""

from .errors import (
    DegenerateError, IndeterminateError, MathematicalFailure, PreconditionError, RankError,
)
from .exact_arith import format_rational, parse_rational, rational_sqrt_exact, to_rational
from .polykit import IdentityReport, Polynomial, variables
from .quadruple import MTuple, ahs_extend, is_diophantine, is_regular_quadruple, p4
from .quintuple import QuintupleVars, dujella_extend, is_regular_quintuple, p5, p5_general
from .hypermatrix import (
    GenQuadruple, Hypermatrix222, KernelVectors, Rotation, SymParam, apply_sl2,
    check_generalized_solution, complete, face_determinants, from_xy, hyperdet, kernel_check,
    kernel_solve, p4h, parameterize_asymmetric, parameterize_symmetric, rotate,
)
from .covariants import CovariantSet, covariant_set, invariant_I
from .search import (
    ReducedProblem, SearchConfig, SymmetricMatrixInstance, classify_regular,
    enumerate_diophantine, pythagorean_rotate, reduce_rank2,
)

__version__ = "0.1.0"
