"""Leavitt path algebras of finite directed graphs, exactly.

Construct L_K(E) over the rationals or a prime field, decide the graded
structure type from the graph, compute the graded matrix block
decomposition when no cycle has an exit, verify the generator
isomorphism relation by relation, and produce constructive regularity
and idempotent-type witnesses.
"""

from .graph import (
    Cycle,
    Edge,
    Graph,
    GraphError,
    InfiniteEnumerationError,
    Path,
    has_exit,
    no_exit_condition,
    paths_into,
    paths_into_cycle,
    paths_up_to,
    simple_cycles,
    sinks,
)
from .lpa import LeavittAlgebra, LpaElement, Monomial, special_edges
from .scalar import LaurentElement, LaurentRing, PrimeField, Rationals, smith_normal_form
from .gmatrix import GradedMatrix, GradedMatrixAlgebra
from .structure import (
    Block,
    DecompositionReport,
    ExitConditionError,
    GeneratorImages,
    TypeReport,
    VerificationError,
    classify,
    decompose,
    dim_series_check,
    phi,
    phi_inverse_basis,
    pull_back,
    verify_phi,
)
from .regularity import (
    BlockSelection,
    IdempotentReport,
    NotRegularError,
    bgr_enumerate,
    block_ranks,
    central_idempotent,
    graded_inner_inverse,
    idempotent_report,
    inner_inverse,
    inner_inverse_field,
    inner_inverse_laurent,
    sample_homogeneous,
    type_I_witness,
)

__version__ = "0.1.0"

__all__ = [
    "Block",
    "BlockSelection",
    "Cycle",
    "DecompositionReport",
    "Edge",
    "ExitConditionError",
    "GeneratorImages",
    "GradedMatrix",
    "GradedMatrixAlgebra",
    "Graph",
    "GraphError",
    "IdempotentReport",
    "InfiniteEnumerationError",
    "LaurentElement",
    "LaurentRing",
    "LeavittAlgebra",
    "LpaElement",
    "Monomial",
    "NotRegularError",
    "Path",
    "PrimeField",
    "Rationals",
    "TypeReport",
    "VerificationError",
    "bgr_enumerate",
    "block_ranks",
    "central_idempotent",
    "classify",
    "decompose",
    "dim_series_check",
    "graded_inner_inverse",
    "has_exit",
    "idempotent_report",
    "inner_inverse",
    "inner_inverse_field",
    "inner_inverse_laurent",
    "no_exit_condition",
    "paths_into",
    "paths_into_cycle",
    "paths_up_to",
    "phi",
    "phi_inverse_basis",
    "pull_back",
    "sample_homogeneous",
    "simple_cycles",
    "sinks",
    "smith_normal_form",
    "special_edges",
    "type_I_witness",
    "verify_phi",
]
