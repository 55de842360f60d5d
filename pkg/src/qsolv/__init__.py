"""Exact symbolic toolkit for q-solvable algebra presentations.

Presentations of iterated skew polynomial algebras (q-commuting
generators with lower-order tails) are validated against the
homogeneity and torsion conditions, multiplied in their monomial basis,
split into diagonal weights, diagonalized under conjugation, stratified,
and specialized at rational or root-of-unity parameter values.
"""

from .errors import (
    AdRootError,
    FamilyError,
    LatticeError,
    LocalizationError,
    ParseError,
    PresentationError,
    QsolvError,
    RepeatedRootError,
    RewriteBudgetError,
    SpecializationError,
)
from .params import (
    FracElem,
    LaurentPoly,
    UnitMonomial,
    as_field_element,
    gamma_torsionfree,
    unit_product,
)
from .presentation import (
    Finding,
    Presentation,
    ValidationReport,
    builtin_presentation,
    quantum_affine,
    quantum_matrices,
    quantum_plane,
    quantum_weyl,
    rank2,
    validate_presentation,
)
from .normalform import (
    NFElement,
    delta_apply,
    nf_mul,
    q_binomial,
    q_integer,
    q_leibniz_expand,
    skew_action,
    tau_apply,
)
from .weights import (
    element_weight,
    is_homogeneous,
    monomial_weight,
    split_ideal_generators,
    weight_components,
)
from .adjoint import (
    AdSpectrum,
    LocElement,
    ad_apply,
    ad_eigencomponents,
    ad_minimal_polynomial,
    difference_set,
    factor_over_differences,
    loc_element,
    replacement_generator,
)
from .torus import (
    CenterDescription,
    LatticeSubgroup,
    TorusPresentation,
    center_lattice,
    commutation_factor,
    compatible_basis,
    root_of_unity_structure,
    torus_normal_scalar,
    torus_of_presentation,
)
from .strat import (
    Rank2Strata,
    StratumDescriptor,
    admissible_compositions,
    classify_affine_prime,
    stratify_affine,
    stratify_rank2,
)
from .special import (
    CycNumber,
    SpecTarget,
    classify_specialization,
    cyclotomic_polynomial,
    is_central_at,
    rational_torsionfree,
    root_of_unity_witness,
    specialize_presentation,
)
from .cli import parse_element, parse_presentation, print_presentation

__version__ = "0.1.0"
