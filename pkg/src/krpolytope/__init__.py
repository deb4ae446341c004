"""Exact fundamental polytopes of finite metric spaces and the Kantorovich-Rubinstein norm."""

from .combinatorics import (
    CombinatorialType,
    canonical_certificate,
    combinatorial_type,
    is_similar,
    isometry_induced_automorphisms,
)
from .exact_math import LPResult, affine_rank, format_rational, parse_rational, psd_check, solve_lp
from .kr_norm import TransportPlan, extension_check, gauge_norm, optimal_plan, split_signs, transport_norm
from .metric_space import (
    DistanceMatrix,
    LabeledPoint,
    MetricReport,
    euclidean_type_test,
    extremality_metric_test,
    fundamental_vectors,
    parse_distance_matrix,
    random_metric,
    validate_metric,
)
from .polytope import (
    FaceLattice,
    FVector,
    HRepresentation,
    Incidence,
    VRepresentation,
    analyze,
    build_face_lattice,
    build_fundamental_polytope,
    enumerate_facets,
    f_vector,
    root_polytope,
    vertex_facet_incidence,
)

__version__ = "0.1.0"
