"""Exact length tables, xi step functions and Frobenius invariants of
hypersurfaces over F_p."""

__version__ = "0.1.0"

from .engine import (  # noqa: E402
    EstimateSequence,
    LengthTable,
    XiStep,
    bracket,
    bracket_sequences,
    c_value,
    ehk_estimates,
    fedder_ae,
    fpt_estimates,
    fsig_estimates,
    interval_integral,
    length_table,
    mu_value,
    pair_fsignature_estimate,
    phi_partial,
    xi_step,
)
from .linalg import EchelonBasis, ImageChain, image_chain, image_dimension  # noqa: E402
from .monomial import (  # noqa: E402
    MonomialSpec,
    classify,
    closed_form_length,
    elementary_symmetric,
    exact_fpt,
    left_limit_at_fpt,
    limsup_at_fpt,
    xi_polynomial,
)
from .ring import (  # noqa: E402
    CapacityError,
    ParseError,
    Polynomial,
    PrimeModulus,
    TruncatedPoly,
    mul_truncated,
    parse_polynomial,
    pow_truncated,
    truncate,
)
