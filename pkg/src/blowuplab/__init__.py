"""blowuplab: exact-arithmetic liftability of linear Poisson structures
through the real projective blowup at the origin of the dual space.

Given a Lie algebra by rational structure constants, the package decides
whether the graph of the associated linear Poisson bivector extends over the
exceptional divisor, and certifies the verdict through three independent
routes: the structural classification of constant-height algebras, the
divisor-adic vanishing order of the pulled-back pure spinor, and the rank of
the lifted distribution tied to coadjoint orbit geometry.
"""

from .classify import (
    ClassificationVerdict,
    HeightSpectrum,
    classify_constant_height,
    is_diagonal_affine,
    sample_height_spectrum,
)
from .errors import (
    BlowupLabError,
    DisagreementError,
    DomainError,
    InternalError,
    JacobiError,
    ParseError,
    StructureError,
    UsageError,
    WitnessSearchError,
)
from .exterior import (
    GradedForm,
    GradedVector,
    exp_interior,
    interior,
    multi_interior,
    wedge,
)
from .blowup_geometry import (
    DistributionSample,
    LiftedVectorField,
    OrbitRankReport,
    distribution_at,
    lift_vector_field,
    orbit_rank_crosscheck,
)
from .liealg import (
    Covector,
    ElementType,
    HeightReport,
    LieAlgebra,
    cartan_class,
    ce_differential,
    change_basis,
    coadjoint_orbit_dim,
    covector_form,
    derived_algebra,
    element_type,
    height,
    height_report,
    jacobi_check,
    killing_form,
    radial_in_orbit,
)
from .model_io import (
    AlgebraDocument,
    AnalysisResult,
    CatalogEntry,
    abelian,
    catalog_algebra,
    catalog_entries,
    diagonal_affine,
    emit_report,
    heis3,
    parse_algebra,
    parse_document,
    scaled_so3_bundle,
    serialize_algebra,
    sl2,
    so3,
)
from .poisson_spinor import (
    ChartForm,
    LiftVerdict,
    LineOrderReport,
    OrderCertificate,
    PerturbationReport,
    PolyBivector,
    blowup_pullback,
    check_line_orders,
    lift_verdict,
    linear_poisson,
    perturbation_invariance_check,
    restrict_to_line,
    spinor,
    t_order,
    vanishing_order,
    volume_form,
)
from .rings import (
    PolyRing,
    Polynomial,
    RATIONALS,
    Rationals,
    format_rational,
    parse_polynomial,
    parse_rational,
)
from .sampling import DEFAULT_SEED

__version__ = "0.1.0"
