"""
Exact covariant differential operators on nearly holomorphic Jacobi functions
of cogenus ``h``, holomorphic projection, and the splitting of ``V_s``-valued
Jacobi forms into scalar ones.
"""

from .errors import (
    DegreeMismatch,
    DepthExceeded,
    HypothesisViolated,
    InternalInvariant,
    JacobiError,
    NotHalfIntegral,
    OddRank,
    ParseError,
    ShapeMismatch,
    SingularIndex,
    TruncationTooLarge,
    WeightMismatch,
    ZeroScale,
)
from .exactcore import (
    HalfIntSymMatrix,
    MultiIndexPair,
    enumerate_pairs,
    invert_index,
    multiplicity_mu,
    psd_support_check,
)
from .maassops import (
    OperatorExpr,
    apply_Delta,
    apply_L,
    apply_LJ,
    apply_R,
    apply_RJ,
    apply_RtJ,
    commutator_check,
    commutator_table,
    compose_Lhat,
    compose_Rhat,
    lr_constant,
)
from .nhfun import FourierPoly, NearlyHoloElt, check_support, depth, total_degree
from .scalarproj import NHDecomposition, holomorphic_part, nh_assemble, nh_decompose
from .symrep import SymPoly, aff_act, include_i, project_p, section_sigma
from .vvsplit import (
    ComponentTuple,
    holo_retract,
    holo_section,
    nh_retract,
    sigma_tilde,
    upper_retract,
    vv_assemble,
    vv_decompose,
)

__version__ = "0.1.0"
