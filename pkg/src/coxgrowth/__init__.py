"""Growth series of dimension-<=2 Coxeter systems with certified root classification."""

from .diagram import (
    FOUR_CYCLE_3,
    CoxeterSystem,
    build_system,
    classify_sphericity,
    connectivity_report,
    contains_dominating_four_cycle,
    dimension_at_most_two,
    edgeless_system,
    euler_characteristic,
    partial_order_leq,
    system_from_json,
    system_to_json,
)
from .growth import (
    GrowthRate,
    GrowthSeries,
    chi_positive_numerator,
    chi_zero_numerator,
    growth_rate,
    growth_series,
    series_coefficients,
)
from .algnum import (
    Classification,
    GrowthClassification,
    classify_growth_series,
    classify_perron,
    classify_pisot,
    classify_salem,
)
from .polynomials import IntPolynomial, block, block_product, cyclotomic
from .sequences import (
    SequenceReport,
    add_chi_reducing_edge,
    bridging_identity_holds,
    convergence_report,
    flatten_to_chi_zero,
    path_closure_sequence,
)
from .families import (
    FamilySpec,
    dominance_margin_report,
    generate_family,
    scan_systems,
    uniform_system_report,
)

__version__ = "0.1.0"
