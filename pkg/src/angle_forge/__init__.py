"""Exact-arithmetic laboratory for distinct angles in convex position:
censuses, order graphs, angle-equality curves, incidences and circle
convexity growth."""

from .census import (
    AngleCensus,
    ArcConfig,
    CoordConfig,
    DirectionSet,
    census_crosscheck,
    direction_set,
    distinct_angles_arcs,
    distinct_angles_coords,
)
from .configs import (
    ConfigMeta,
    config_meta,
    gen_convex_perturbed,
    gen_grid,
    gen_hyperbola,
    gen_line_ap,
    gen_log_spiral,
    gen_ngon,
    gen_parabola,
    is_convex_position,
)
from .convexity import (
    CircleSetup,
    GrowthReport,
    alpha,
    beta,
    d2alpha_dbeta2,
    dalpha_dbeta,
    growth_measure,
    second_derivative_sign_profile,
    theorem_main_tradeoff,
)
from .curves import (
    Circle,
    CurveClass,
    CurveFamily,
    CurvePoly,
    IncidenceReport,
    Line,
    bisector_energy,
    canonical_key,
    classify_curve,
    curve_poly,
    incidence_bound_check,
    multiplicity_census,
    on_curve_iff_equal_cot,
    rich_curves,
    weighted_incidences,
)
from .exact import (
    CotKey,
    Direction,
    RatPoint,
    Rational,
    TanBranchAngle,
    TurnAngle,
    cocircular,
    cyclic_direction_order,
    oriented_cot,
    pt,
    rat,
    tan_combine,
    unoriented_cot_key,
    wedge,
)
from .ordergraph import (
    BipartiteGraph,
    NeighbourOrder,
    NormalIntervalReport,
    OrderedPair,
    build_graph,
    check_order_assumption,
    diff_ladder,
    neighbour_order,
    normal_intervals,
    plunnecke_subset,
    split_convex,
    verify_lower_bound,
    verify_neighbour_uniqueness,
)
from .report import sweep, verify_all

__version__ = "0.1.0"
