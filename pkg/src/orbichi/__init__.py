"""Exact orbifold invariants of finite group actions and their wreath series.

The package computes, in exact arithmetic, the order-k (generalized) orbifold
invariants of a finite group acting on a finite set or linearly on C^d, and
verifies the wreath-power generating-series identity by comparing an honest
brute-force expansion against the power-structure product formula,
coefficient by coefficient.
"""

from .errors import (
    ConsistencyError,
    GroupValidationError,
    InputError,
    ModelValidationError,
    OrbichiError,
    SizeCapExceeded,
    UsageError,
)
from .exactnum import (
    CycloMatrix,
    CyclotomicNumber,
    Rational,
    cyclotomic_polynomial,
    kernel_basis,
    solve_in_span,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    WreathElement,
    WreathGroup,
    WreathType,
    central_extension,
    centralizer,
    centralizer_order_from_type,
    commuting_tuples,
    conjugacy_classes_of,
    element_order,
    group_from_permutations,
    group_from_table,
    subgroup_generated,
    type_class_count,
    wreath_product,
    wreath_type,
)
from .gmodel import (
    FiniteGSet,
    GSetView,
    LinearGAction,
    LinearView,
    age,
    central_extension_model,
    fixed_locus,
    product_model,
    quotient_class,
    restrict_to_fixed,
    sym_orbit_model,
    wreath_model,
    whole_view,
)
from .motivic import LPolynomial, specialize_euler, specialize_hodge_deligne
from .series import (
    TruncatedSeries,
    factor_standard,
    kapranov_zeta,
    monomial_geometric_power,
    power_structure_pow,
    rhs_principal,
    series_mul,
    series_product,
)
from .invariants import (
    VerificationReport,
    chi_k_commuting,
    chi_k_recursive,
    chi_lhs_series,
    chi_series_check,
    class_k,
    inertia_class,
    lhs_series,
    verify_principal,
)
from .bundled import bundled_document, bundled_model, bundled_names
from .documents import document_from_model, load_document, load_document_text

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
