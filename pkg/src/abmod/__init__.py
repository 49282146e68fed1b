"""Exact computer algebra for finite-rank (a,b)-modules.

An (a,b)-module is a free module of finite rank over the formal power
series ring C[[b]] together with a continuous C-linear operator a
satisfying a.b - b.a = b**2.  The package represents such modules by
their structure matrices over a truncated series ring, with exact
rational-complex coefficients, and computes saturations, spectra,
duals, Hom and Ext, Jordan-Hoelder sequences, rank-2 normal forms, and
finite-determination data for regular modules.
"""

from .catalog import (
    from_expression,
    make_E_lambda,
    make_E_lambda_mu,
    make_E_lambda_mu_alpha,
    make_E_lambda_n,
    make_F_rho,
    make_J_k,
    random_regular,
)
from .determination import (
    FiniteAbQuotient,
    Intertwiner,
    identity_truncation_iso,
    lift_truncation_iso,
    module_iso,
    quotient_iso,
    recover_Eb_from_truncation,
    truncate,
    verify_fd,
)
from .errors import (
    AbmodError,
    BadParameter,
    HypothesisViolated,
    NoLift,
    NonUniqueLift,
    NotAStable,
    NotAUnit,
    NotContained,
    NotEigen,
    NotFound,
    NotPrimitive,
    NotRegular,
    NotSimplePole,
    ParseError,
    PrecisionExhausted,
    UnsupportedSpectrum,
)
from .functors import (
    JHSequence,
    Rank2NormalForm,
    classify_rank2,
    dual,
    eigen_lift,
    ext_dims,
    hom_ab,
    jordan_holder,
    quotient_by_rank1,
    twist,
)
from .invariants import (
    SaturationResult,
    WidthTable,
    alpha_invariant,
    biggest_simple_pole,
    delta_index,
    is_geometric,
    is_regular,
    n0_bound,
    n_lambda,
    regularity_order,
    saturate,
    spectrum,
    width_table,
)
from .lattice import Lattice, lattice_from_columns, module_on_lattice, standard_lattice
from .module import AbModule, Element, apply_a, apply_b
from .morphisms import IntertwinerSystem, find_invertible, verify_intertwiner
from .scalars import ONE, ZERO, Scalar
from .series import Series
from .textio import (
    emit_module_file,
    format_scalar,
    format_series,
    parse_module_file,
    parse_scalar,
    parse_series,
)

__version__ = "0.1.0"

__all__ = [
    "AbModule",
    "AbmodError",
    "BadParameter",
    "Element",
    "FiniteAbQuotient",
    "HypothesisViolated",
    "Intertwiner",
    "IntertwinerSystem",
    "JHSequence",
    "Lattice",
    "NoLift",
    "NonUniqueLift",
    "NotAStable",
    "NotAUnit",
    "NotContained",
    "NotEigen",
    "NotFound",
    "NotPrimitive",
    "NotRegular",
    "NotSimplePole",
    "ONE",
    "ParseError",
    "PrecisionExhausted",
    "Rank2NormalForm",
    "SaturationResult",
    "Scalar",
    "Series",
    "UnsupportedSpectrum",
    "WidthTable",
    "ZERO",
    "alpha_invariant",
    "apply_a",
    "apply_b",
    "biggest_simple_pole",
    "classify_rank2",
    "delta_index",
    "dual",
    "eigen_lift",
    "emit_module_file",
    "ext_dims",
    "find_invertible",
    "format_scalar",
    "format_series",
    "from_expression",
    "hom_ab",
    "identity_truncation_iso",
    "is_geometric",
    "is_regular",
    "jordan_holder",
    "lattice_from_columns",
    "lift_truncation_iso",
    "make_E_lambda",
    "make_E_lambda_mu",
    "make_E_lambda_mu_alpha",
    "make_E_lambda_n",
    "make_F_rho",
    "make_J_k",
    "module_iso",
    "module_on_lattice",
    "n0_bound",
    "n_lambda",
    "parse_module_file",
    "parse_scalar",
    "parse_series",
    "quotient_by_rank1",
    "quotient_iso",
    "random_regular",
    "recover_Eb_from_truncation",
    "regularity_order",
    "saturate",
    "spectrum",
    "standard_lattice",
    "truncate",
    "twist",
    "verify_fd",
    "verify_intertwiner",
    "width_table",
]
