"""lplab: exact-arithmetic experiments with distinct distances under l_p metrics.

Everything on the trust path is arbitrary-precision rational arithmetic:
distances live as order-preserving keys (p-th powers, or the max for l_inf),
bisectors and circles are analysed through exact sign decisions, and the
l_inf structure pipeline works on exact coordinates throughout.
"""

__version__ = "0.1.0"

from .census import DistanceCensus, PairClassification, classify_pairs_linf, distance_census, incidences
from .bisector import (
    Bisector,
    bisector_eval,
    bisector_intersections,
    build_bisector,
    central_symmetry_check,
    containing_curves_odd,
    inflection_points,
    monotonicity_probe,
    point_on_bisector,
)
from .circlegraph import (
    CircleGraph,
    CrossingReport,
    build_circles,
    build_multigraph,
    crossing_count,
    crossing_count_by_edges,
    multiplicity_histogram,
)
from .generators import grid, random_rational, row_construction
from .geometry import (
    LINF,
    L1,
    L2,
    DistanceKey,
    ExactScalar,
    PNorm,
    Point,
    PointSet,
    compare_distances,
    l1_to_linf_transform,
    lp_distance_key,
    point,
    point_set,
)
from .pointio import read_points, read_points_csv, write_points
from .structure import (
    GAP,
    EnergyReport,
    Frame,
    LineCover,
    StructureReport,
    best_translation,
    corollary_pipeline,
    difference_energy,
    difference_set,
    extreme_frame,
    gap_fit,
    intercept_partition,
    line_cover,
    rich_lines,
    saved_line_progressions,
)

__all__ = [name for name in dir() if not name.startswith("_")]
