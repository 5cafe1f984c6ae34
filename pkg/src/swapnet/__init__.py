"""Exact swap-equilibrium analysis for network formation under edge and vertex destruction."""
from .constructions import CliquePathsParams, clique_with_paths, cycle_extension, make_named
from .destruction import (
    BASE_DESTROYERS,
    DEGREE_VERTEX,
    EXTREME_EDGE,
    EXTREME_VERTEX,
    INFINITY,
    UNIFORM_BRIDGE,
    UNIFORM_EDGE,
    UNIFORM_VERTEX,
    DestroyerSpec,
    destroyer_measure,
    mixture,
    player_cost,
    player_costs,
    relevance_edge,
    relevance_vertex,
    separation_edge,
    separation_profile,
    separation_vertex,
    social_cost,
)
from .equilibrium import (
    Deviation,
    apply_deviation,
    best_response_dynamics,
    enumerate_bridge_swaps,
    enumerate_swaps,
    find_improving_deviation,
    is_swap_equilibrium,
)
from .graph import (
    Graph,
    GraphError,
    block_cut_tree,
    bridge_tree,
    build_graph,
    classify,
    components_after_destruction,
    find_bridges,
    is_connected,
)
from .io import from_edge_list, from_graph6, to_dot, to_edge_list, to_graph6

__version__ = "0.1.0"
