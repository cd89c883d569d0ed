"""Discrete curvature toolkit for graphs, simplicial complexes and point clouds."""

from .complex import SimplicialComplex, clique_complex, incidence, vietoris_rips
from .edge_curvature import forman_edge, forman_simplex, ollivier_edge
from .flow import (
    CommunityAssignment,
    FlowState,
    delete_negative_communities,
    ricci_flow,
    ricci_flow_step,
    surgery,
)
from .graph import Graph, GraphError, Metric, epsilon_graph, load_graph, punctured_two_ball, shortest_paths
from .metric_curvature import (
    expansion_constant,
    gromov_products,
    haantjes_path,
    haantjes_ricci,
    menger_ricci,
    menger_triangle,
    sectional_edge,
    sectional_triple,
    sectional_vertex,
)
from .pointcloud import BallVolumeProfile, ball_volume_profile, scalar_estimate
from .report import CurvatureReport
from .transport import DiscreteMeasure, lazy_measure, wasserstein1
from .vertex_curvature import (
    bakry_emery,
    effective_resistance,
    resistance_edge,
    resistance_vertex,
    scalar_from_edges,
    scalar_orc,
)

__version__ = "0.1.0"

__all__ = [
    "BallVolumeProfile",
    "CommunityAssignment",
    "CurvatureReport",
    "DiscreteMeasure",
    "FlowState",
    "Graph",
    "GraphError",
    "Metric",
    "SimplicialComplex",
    "bakry_emery",
    "ball_volume_profile",
    "clique_complex",
    "delete_negative_communities",
    "effective_resistance",
    "epsilon_graph",
    "expansion_constant",
    "forman_edge",
    "forman_simplex",
    "gromov_products",
    "haantjes_path",
    "haantjes_ricci",
    "incidence",
    "lazy_measure",
    "load_graph",
    "menger_ricci",
    "menger_triangle",
    "ollivier_edge",
    "punctured_two_ball",
    "resistance_edge",
    "resistance_vertex",
    "ricci_flow",
    "ricci_flow_step",
    "scalar_estimate",
    "scalar_from_edges",
    "scalar_orc",
    "sectional_edge",
    "sectional_triple",
    "sectional_vertex",
    "shortest_paths",
    "surgery",
    "vietoris_rips",
    "wasserstein1",
]
