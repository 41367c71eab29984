"""Eigenfamilies and harmonic morphisms on classical matrix groups.

The library builds complex-valued polynomial families on the classical
non-compact matrix groups whose tension field and conformality pairing
are proportional to the functions themselves, assembles rational
quotients of such polynomials, and verifies numerically, with exact
2-jets at sampled group points, that the quotients are harmonic and
horizontally conformal.  Each family also transports to the compact
dual group, where the same checks run with sign-flipped constants.

Layers, bottom up: linalg (generator matrices and the square/conjugation
sum identities), groups (algebra bases and group membership), calculus
(2-jet arithmetic, tension and conformality operators, coordinate law
batteries), families (the eigenfamily constructors), morphisms (quotient
assembly and verification, power and product laws), duality (compact
dual transport), report (deterministic JSON reports), cli.
"""

from .calculus import (
    DEFAULT_SEED,
    POLE_DELTA,
    Const,
    Jet2,
    PoleError,
    Product,
    Quotient,
    ScalarField,
    Scale,
    Sum,
    TraceForm,
    battery_descriptors,
    coordinate_field,
    entry_jets,
    fd_oracle,
    field_from_dict,
    jet_eval,
    kappa,
    tension,
    trace_form,
    verify_lemma,
)
from .duality import (
    DualDescriptor,
    DualFamily,
    dual_basis,
    dual_descriptor,
    dual_membership_residual,
    dualize_family,
    sample_dual_point,
    verify_dual,
)
from .families import (
    CONSTRUCTORS,
    DEMO_GROUPS,
    BiEigenFamily,
    EigenFamily,
    construct,
    family_from_dict,
    family_to_dict,
    max_isotropic_subspace,
    verify_family,
)
from .groups import (
    GroupDescriptor,
    algebra_basis,
    algebra_residual,
    membership_residual,
    parse_descriptor,
    random_algebra_element,
    sample_point,
    verify_basis,
)
from .linalg import (
    IndexSets,
    check_identities,
    diag_generator,
    signature_matrix,
    skew_generator,
    sym_generator,
    symplectic_form,
    unit_matrix,
)
from .morphisms import (
    Morphism,
    bidegree_constants,
    build_morphism,
    compose,
    halfplane_quotient,
    morphism_from_dict,
    morphism_to_dict,
    power_constants,
    quotient_tau_kappa,
    random_morphism,
    verify_appendix_lemmas,
    verify_morphism,
)
from .report import body_bytes, load_report, make_report, write_report

__version__ = "0.1.0"

__all__ = [
    "BiEigenFamily", "CONSTRUCTORS", "Const", "DEFAULT_SEED", "DEMO_GROUPS",
    "DualDescriptor", "DualFamily", "EigenFamily", "GroupDescriptor",
    "IndexSets", "Jet2", "Morphism", "POLE_DELTA", "PoleError", "Product",
    "Quotient", "ScalarField", "Scale", "Sum", "TraceForm", "algebra_basis",
    "algebra_residual", "battery_descriptors", "bidegree_constants",
    "body_bytes", "build_morphism", "check_identities", "compose",
    "construct", "coordinate_field", "diag_generator", "dual_basis",
    "dual_descriptor", "dual_membership_residual", "dualize_family",
    "entry_jets", "family_from_dict", "family_to_dict", "fd_oracle",
    "field_from_dict", "halfplane_quotient", "jet_eval", "kappa",
    "load_report", "make_report", "max_isotropic_subspace",
    "membership_residual", "morphism_from_dict", "morphism_to_dict",
    "parse_descriptor", "power_constants", "quotient_tau_kappa",
    "random_algebra_element", "random_morphism", "sample_dual_point",
    "sample_point", "signature_matrix", "skew_generator", "sym_generator",
    "symplectic_form", "tension", "trace_form", "unit_matrix",
    "verify_appendix_lemmas", "verify_basis", "verify_dual", "verify_family",
    "verify_lemma", "verify_morphism", "write_report",
]
