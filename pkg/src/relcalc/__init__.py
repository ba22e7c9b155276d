"""Numerical calculus for linear relations on C^n.

Subspaces are orthonormal frames, relations are frames in C^{2n}, and every
rank decision goes through one :class:`TolerancePolicy`.
"""

from .exceptions import (
    DimensionMismatchError,
    DomainMembershipError,
    HypothesisError,
    NonConvergenceError,
    RelcalcError,
    TransformUndefinedError,
)
from .subspace import (
    DEFAULT_TOL,
    Frame,
    TolerancePolicy,
    compare,
    complement,
    distance,
    intersect,
    orthonormalize,
    projector_gap,
    span_sum,
)
from .relation import (
    Relation,
    adjoint,
    build,
    classify,
    compose,
    from_generators,
    from_operator,
    identity,
    inverse,
    op_sum,
    parts,
    scalar_mul,
    shift,
    trivial,
)
from .quotient import norm_at, operator_part, quotient_rep, relation_norm
from .deficiency import deficiency_index, deficiency_indices, deficiency_space
from .perturbation import (
    RelBoundCertificate,
    certify_bound,
    homotopy_sweep,
    inclusion_report,
    lemma32_shift,
    projector_family,
    quadratic_frontier,
    st_inverse_analysis,
)
from .invariance import invariance_report

__version__ = "0.1.0"

__all__ = [
    "DimensionMismatchError",
    "DomainMembershipError",
    "HypothesisError",
    "NonConvergenceError",
    "RelcalcError",
    "TransformUndefinedError",
    "DEFAULT_TOL",
    "Frame",
    "TolerancePolicy",
    "compare",
    "complement",
    "distance",
    "intersect",
    "orthonormalize",
    "projector_gap",
    "span_sum",
    "Relation",
    "adjoint",
    "build",
    "classify",
    "compose",
    "from_generators",
    "from_operator",
    "identity",
    "inverse",
    "op_sum",
    "parts",
    "scalar_mul",
    "shift",
    "trivial",
    "RelBoundCertificate",
    "certify_bound",
    "homotopy_sweep",
    "inclusion_report",
    "lemma32_shift",
    "projector_family",
    "quadratic_frontier",
    "st_inverse_analysis",
    "norm_at",
    "operator_part",
    "quotient_rep",
    "relation_norm",
    "deficiency_index",
    "deficiency_indices",
    "deficiency_space",
    "invariance_report",
]
