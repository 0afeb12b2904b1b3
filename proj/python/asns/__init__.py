"""Resilient multi-agent consensus with active secure neighbor selection."""

from ._core import (
    DirectedGraph,
    Error,
    Scenario,
    SimTrace,
    format_graph,
    laplacian,
    load_scenario,
    max_robustness,
    parse_graph,
    parse_scenario,
    random_robust_graph,
    run_scenario,
    select_neighbors,
    smallest_eigenpair,
    spanning_tree_root,
)

__all__ = [
    "DirectedGraph",
    "Error",
    "Scenario",
    "SimTrace",
    "format_graph",
    "laplacian",
    "load_scenario",
    "max_robustness",
    "parse_graph",
    "parse_scenario",
    "random_robust_graph",
    "run_scenario",
    "select_neighbors",
    "smallest_eigenpair",
    "spanning_tree_root",
]
