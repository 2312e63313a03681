"""Complete minors with small prevertices in graphs without antitriangles."""

import logging

from .graph import Graph, antitriangle, complement, max_clique, min_vertex_cut, parse_graph, write_graph
from .labeling import EdgeLabeling, axiom_check, solve_2sat_labeling
from .matching import hall_matching, max_matching
from .strategies import best_minor
from .witness import MinorWitness, brute_force_max_minor, verify_minor

logging.getLogger(__name__).addHandler(logging.NullHandler())

__version__ = "0.1.0"

__all__ = [
    "Graph", "antitriangle", "complement", "max_clique", "min_vertex_cut", "parse_graph", "write_graph",
    "EdgeLabeling", "axiom_check", "solve_2sat_labeling", "hall_matching", "max_matching", "best_minor",
    "MinorWitness", "brute_force_max_minor", "verify_minor",
]
