"""Fermat-Steiner problems and minimal networks in Hausdorff hyperspaces.

Two backends share one interface: finite extended metric spaces (subsets as
bitmasks, exact rationals) and compact convex polygons in the plane under a
polyhedral norm (exact rational geometry).
"""

from .extended import INF, ext, fmt, is_inf, parse_rational
from .metric import (FiniteSpace, MetricAxiomError, PointSet, hausdorff_inf,
                     hausdorff_supmax, finiteness_classes, metric_projection)
from .convex2d import ConvexPolygon, ConvexityError, PolyhedralNorm, hausdorff as hausdorff_convex
from .backends import BackendMismatch, Convex2dBackend, FiniteBackend
from .fermat_steiner import (Boundary, InfeasibleBoundary, class_report, enumerate_class,
                             one_sided_check, reverse_one_sided_check, solve_bruteforce,
                             solve_radius_search)
from .networks import (BoundaryGraph, GraphError, Network, enumerate_topologies, mpn_solve,
                       network_length, reduce_degenerate, smt_solve)

__version__ = "0.1.0"

__all__ = [
    "INF", "ext", "fmt", "is_inf", "parse_rational",
    "FiniteSpace", "MetricAxiomError", "PointSet", "hausdorff_inf", "hausdorff_supmax",
    "finiteness_classes", "metric_projection",
    "ConvexPolygon", "ConvexityError", "PolyhedralNorm", "hausdorff_convex",
    "BackendMismatch", "Convex2dBackend", "FiniteBackend",
    "Boundary", "InfeasibleBoundary", "class_report", "enumerate_class", "one_sided_check",
    "reverse_one_sided_check", "solve_bruteforce", "solve_radius_search",
    "BoundaryGraph", "GraphError", "Network", "enumerate_topologies", "mpn_solve",
    "network_length", "reduce_degenerate", "smt_solve",
]
