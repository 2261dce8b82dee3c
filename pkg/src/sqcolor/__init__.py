"""List 2-distance and injective coloring of sparse graphs by reducible
configurations and discharging, with exact oracles to check every step."""

from .brooks import PreconditionViolated, brooks_list_color
from .classify import classify_vertices, support_graph
from .colorer import (
    BadInput, ExtensionFailure, NoReducibleConfiguration, ReductionTrace, color, extend_with,
    random_lists, replay, uniform_lists,
)
from .coloring import check_coloring, constraints
from .configurations import BadK, ConfigurationMatch, detect, detect_any
from .density import mad_at_least, mad_bruteforce, mad_exact
from .discharging import apply_rules, verify_min_charge
from .graph import Graph, build_graph, girth, square
from .oracles import GenSpec, chi2_exact, gen_gadget, gen_sparse, list_color_exact

__all__ = [
    "BadInput", "BadK", "ConfigurationMatch", "ExtensionFailure", "GenSpec", "Graph",
    "NoReducibleConfiguration", "PreconditionViolated", "ReductionTrace", "apply_rules",
    "brooks_list_color", "build_graph", "check_coloring", "chi2_exact", "classify_vertices",
    "color", "constraints", "detect", "detect_any", "extend_with", "gen_gadget", "gen_sparse",
    "girth", "list_color_exact", "mad_at_least", "mad_bruteforce", "mad_exact", "random_lists",
    "replay", "square", "support_graph", "uniform_lists", "verify_min_charge",
]
