"""Certified interval arithmetic for covolume bounds of reflective lattices.

The package computes rigorous lower bounds for covolumes of arithmetic
hyperbolic reflection groups, spectral upper bounds, the feasibility table
across dimensions, the admissible-field sieve, and quadratic-form local
invariant bookkeeping.  All real quantities are tracked as directed-rounding
intervals; comparisons either certify or raise UndecidedComparison.
"""

from .numerics import (
    DEFAULT_PRECISION,
    BoundedReal,
    Context,
    UndecidedComparison,
    sphere_volume,
)
from .bounds import (
    FieldBoundInput,
    VolumeBound,
    class_number_estimate,
    growth_certificate,
    nu_lower_bound,
    omega,
)
from .spectral import (
    DimensionReport,
    TableRow,
    dimension_cutoffs,
    m_bound,
    r_ratios,
    spectral_gap,
    table1,
)
from .fielddata import (
    FieldDataError,
    FieldTable,
    NumberFieldRecord,
    default_table,
    load_field_table,
    odlyzko_min_disc,
)
from .sieve import Exclusion, SieveReport, SieveStep, sieve, sieve_all
from .forms import (
    LocalInvariantProfile,
    enumerate_T_sets,
    hasse_invariant,
    hilbert_symbol,
    lambda_lower,
    local_global_check,
    named_form_invariants,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    "DEFAULT_PRECISION",
    "BoundedReal",
    "Context",
    "UndecidedComparison",
    "sphere_volume",
    "FieldBoundInput",
    "VolumeBound",
    "class_number_estimate",
    "growth_certificate",
    "nu_lower_bound",
    "omega",
    "DimensionReport",
    "TableRow",
    "dimension_cutoffs",
    "m_bound",
    "r_ratios",
    "spectral_gap",
    "table1",
    "FieldDataError",
    "FieldTable",
    "NumberFieldRecord",
    "default_table",
    "load_field_table",
    "odlyzko_min_disc",
    "Exclusion",
    "SieveReport",
    "SieveStep",
    "sieve",
    "sieve_all",
    "LocalInvariantProfile",
    "enumerate_T_sets",
    "hasse_invariant",
    "hilbert_symbol",
    "lambda_lower",
    "local_global_check",
    "named_form_invariants",
]
