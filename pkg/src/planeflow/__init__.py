"""Exact maximum-flow values in plane networks of bounded edge-outerplanarity.

The pipeline normalizes the network, rewrites it into a cubic plane graph
without two-edge cycles, peels its layers, builds a reassembling tree whose
node boundaries stay within twice the number of layers, and folds interval
typings up that tree.  :func:`max_flow_value` and :func:`flow_intervals`
are the entry points; :mod:`planeflow.oracle` holds the reference solvers.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .graph_core import EmbeddingEditor, PlaneDiGraph, build_plane_graph, trace_faces, undirect
from .network import ExtFlowNetwork, FlowNetwork
from .outerplanarity import Layering, edge_outerplanarity, vertex_outerplanarity
from .preprocess import NormalizationReport, normalize
from .reassembling import AlphaMeasure, Reassembling, alpha_measure, build_reassembling, caterpillar
from .transform import TransformedNetwork, expand_vertex, to_cubic, transform_network
from .typings import (
    NodeTyping,
    Typing,
    compute_typing,
    flow_intervals,
    induced_io,
    leaf_typing,
    max_flow_value,
    merge_typings,
    satisfies,
)
from .oracle import dinic_max_flow, feasible_flow_with_lower_bounds, project_interval
from .pfn import format_pfn, parse_pfn

__all__ = [
    "PlaneDiGraph", "EmbeddingEditor", "build_plane_graph", "trace_faces", "undirect",
    "FlowNetwork", "ExtFlowNetwork",
    "Layering", "edge_outerplanarity", "vertex_outerplanarity",
    "NormalizationReport", "normalize",
    "Reassembling", "AlphaMeasure", "build_reassembling", "caterpillar", "alpha_measure",
    "TransformedNetwork", "expand_vertex", "to_cubic", "transform_network",
    "NodeTyping", "Typing", "compute_typing", "flow_intervals", "induced_io", "leaf_typing",
    "max_flow_value", "merge_typings", "satisfies",
    "dinic_max_flow", "feasible_flow_with_lower_bounds", "project_interval",
    "format_pfn", "parse_pfn",
]
