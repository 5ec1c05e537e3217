"""Digital nets over F2, exact t-values, and the matrices B with t(I, B, B^2) = 0."""

from .characterization import (
    Characterization2D,
    ConjugacyWitness,
    SearchReport,
    c_transport_probe,
    characterize_2d,
    conjugacy_orbit,
    decompose_t0_triple,
    exhaustive_search_t0,
    lower_transform,
    pj,
    pj_identities_check,
    subspace_dimension_probe,
)
from .cud import RecurrenceSpec, TupleSet, faure_nets, overlapping_tuples, recurrence_orbit, tuple_set_equals_net
from .errors import (
    BudgetExceededError,
    DimensionError,
    HypothesisError,
    MatrixParseError,
    NoFactorizationError,
    NoSolutionError,
    NotT0Error,
    OrderCapExceeded,
    SingularMatrixError,
    TheoremViolation,
)
from .gf2 import (
    BitMatrix,
    BitVector,
    TriangularPair,
    antidiag_j,
    enumerate_unipotent_lower,
    identity,
    inverse,
    is_lower_triangular,
    is_primitive,
    is_upper_triangular,
    leading_minors_nonsingular,
    lu_unit_diagonal,
    multiplicative_order,
    multiply,
    pascal_p,
    rank,
)
from .net import NetSpec, PointSet, TValueResult, compositions, generate_points, phi, t_invariance_check, t_value_geometric, t_value_rank

__version__ = "0.1.0"
