"""Exact symbolic toolkit for free torus actions on quantum tori.

Twisted Laurent polynomials with formal phase coefficients, isotypic
grading, factor systems and their verifiers, the group-cohomological
obstruction calculus for lifting automorphisms, derivation lifts with
their gauge Lie algebra, and frame connections with curvature on
associated modules.  Everything is exact; all values are immutable and
all operations are pure functions, so sharing across threads is safe.
"""

from .algebra import (
    PolyMatrix,
    TwistedPoly,
    TwistMatrix,
    TwistMismatchError,
    numeric_product,
)
from .cohomology import (
    LiftedAutomorphism,
    LiftOutcome,
    Obstruction,
    OneCochain,
    TwoCocycle,
    WitnessError,
    extract_cocycle,
    lift_automorphism,
    lift_via_cohomology,
    pointwise_ratio,
    solve_coboundary,
    updated_witness,
    verify_cocycle,
)
from .derivations import (
    ConnectionSection,
    CrossedHom,
    Derivation,
    DerivationError,
    HFamily,
    LiftedDerivation,
    SectionEntry,
    atiyah_check,
    bracket,
    bracket_derivations,
    crossed_hom_report,
    gauge_report,
    is_crossed_hom,
    is_gauge_element,
    lift_derivation,
    make_derivation,
    scaling_derivation,
    two_pi_i,
    verify_lift_conditions,
)
from .dynamics import (
    Character,
    GradedElement,
    TorusAction,
    base_monomials,
    char_add,
    char_box,
    char_neg,
    char_zero,
    cleft_generator,
    fixed_part,
    grade,
    inner_product,
    is_equivariant,
)
from .factor_system import (
    AlgebraMorphism,
    Automorphism,
    FactorSystem,
    IsometryFamily,
    MatrixMorphism,
    PartialIsometryFamily,
    ScopeError,
    apply_automorphism,
    frohlich_map,
    frohlich_morphism,
    from_cleft,
    isotypic_mul,
    verify_axioms,
    verify_conjugacy,
    verify_gauge_unitary,
)
from .geometry import (
    AssociatedModule,
    CurvatureValue,
    ModuleMembershipError,
    curvature,
    frame_connection,
    left_inner,
    make_module,
    right_inner,
    section_connection,
    section_metric_report,
)
from .phases import Phase, QQi
from .report import CheckReport, Counterexample

__all__ = [name for name in dir() if not name.startswith("_")]
