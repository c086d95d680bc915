"""Exact arithmetic for hitting-time loop decompositions and the
Bernoulli/Euler polynomial identities they generate, plus Monte Carlo
cross-checks of the underlying stochastic models."""

from .exceptions import (
    BudgetExceededError,
    ContractionViolatedError,
    DegenerateSitesError,
    IndexOutOfOrderError,
    InvalidSitesError,
    LoopwalkError,
    NonzeroLowCoefficientError,
    OrderMismatchError,
    ZeroConstantTermError,
)
from .identities import (
    PartialSumTable,
    bernoulli_diff_gf_check,
    bessel_bracket_poly,
    bessel_identity_partial,
    bessel_master_check,
    bm_bracket_poly,
    bm_master_check,
    bracket_series,
    euler_identity_partial,
    geometric_tail_report,
    sech_series,
)
from .loops import (
    LoopSystem,
    count_nonadjacent,
    count_with_min_index,
    denominator_series,
    denominator_terms,
    format_denominator_terms,
    nonadjacent_subsets,
    rhs_series,
    transfer_expansion,
    verify_loop,
)
from .models import (
    BirthDeathChain,
    SiteConfig,
    bd_hitting_pgf,
    bd_system,
    bessel_phi,
    bessel_phi_down,
    bessel_phi_up,
    bessel_system,
    bm_phi,
    bm_phi_down,
    bm_phi_up,
    bm_system,
    unit_sites,
)
from .montecarlo import SimReport, simulate_bd, simulate_bessel_hit, simulate_bm_hit
from .polynomials import bernoulli_number_at, bernoulli_poly, euler_number, euler_poly
from .series import (
    DEFAULT_ORDER,
    Rational,
    Series,
    VerificationReport,
    as_rational,
    compare_series,
    cosh_series,
    exp_series,
    exprel_series,
    format_rational,
    from_coeffs,
    one,
    sinh_over_w_series,
    zero,
)
from .umbral import (
    SymbolCombo,
    SymbolKind,
    SymbolTerm,
    combo_egf,
    combo_moment,
    parse_combo,
    verify_symbol_identity,
)

__version__ = "0.1.0"
