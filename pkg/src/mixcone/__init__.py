"""Exact polyhedral analysis of preorders on finite-dimensional mixture spaces."""

from .archimedean import ArchStructure, AxiomReport, arch_structure, check_axioms
from .cone import (
    BudgetExceeded,
    Cone,
    Face,
    FaceBudgetExceeded,
    Interval,
    Membership,
    cone_equal,
    dual,
    enumerate_faces,
    from_generators,
    from_halfspaces,
    member,
    relint_point,
    segment_cone_interval,
    smallest_face,
    to_halfspaces,
)
from .corpus import (
    HersteinFixture,
    KleeTruncation,
    LexOrder,
    fosd,
    herstein_fixture,
    klee_separation_margin,
    klee_truncation,
    lex_mc_witness,
    norm_cone_order,
    pointwise_order,
    product_order,
)
from .linalg import Q, kernel_basis, rref, solve
from .mixture import (
    AffineFunctional,
    MixtureSpace,
    MPoint,
    dimension,
    embed_difference,
    extend_functional,
    functional_from_values,
    mix,
)
from .preorder import DominancePair, PreorderedSpace, build, comparison_interval, geq, indiff, strict, weak_dominates
from .representation import (
    MultiRep,
    StrictFamily,
    minimize,
    same_preorder,
    smr_holds,
    strict_family,
    strict_functional,
    synthesize,
    verify,
)

__version__ = "0.1.0"
