"""Exact classification of non-positive at infinity divisorial valuations.

Discrete classes of plane valuations, the NPI criterion on the projective
plane and on Hirzebruch surfaces, dual graphs of the associated blow-up
sequences, and a generator of new NPI classes.  All arithmetic is exact;
irrational exponents are certified enclosures.
"""

from .discrete_class import (
    ContactData,
    DiscreteClass,
    InvalidClass,
    ValuationKind,
    contact_data,
    last_contact_closed_form,
    normalized_ratio,
    parse_class,
    validate,
)
from .dual_graph import DualGraph, GraphInvariantError, build, digit_runs, render
from .generator import (
    NotExtensible,
    RejectedChoice,
    chain,
    check_input,
    output1,
    output2_integer,
    output2_irrational,
    parse_strategy,
)
from .grid import ScanSpec, iter_grid
from .npi import (
    HirzebruchNonSpecial,
    HirzebruchSpecial,
    Projective,
    Verdict,
    check_inclusions,
    classify,
    classify_dual_form,
    nonspecial_max_delta,
    parse_surface,
    special_min_delta,
)
from .numeric import (
    DEFAULT_BUDGET,
    CertifiedIrrational,
    DomainError,
    Undecidable,
    Unknown,
    cf_eval,
    cf_expand,
    cf_expand_prefix,
    format_exponent,
    parse_exponent,
)

__version__ = "0.1.0"
