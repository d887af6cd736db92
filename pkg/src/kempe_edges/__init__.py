"""Kempe-change transformations between edge colorings of triangle-free and chordless graphs."""

from .coloring import (
    ChainComponent,
    EdgeColoring,
    EdgeStatus,
    KempeStep,
    KempeTrace,
    MissingAssignment,
    apply_trace,
    choose_missing,
    classify_edges,
    kempe_component,
    kempe_swap,
    missing_colors,
    validate_proper,
    verify_trace,
)
from .engine import (
    align_first_class,
    class2_transform,
    find_coloring,
    find_delta_coloring,
    project_trace,
    transform,
)
from .fans import Fan, build_fan, fan_digraph, is_saturated, shift_path_fan, shift_target
from .factory import corpus, double_graph, prop31_generate
from .graph import ChordWitness, Graph, chord_witness, diameter, is_chordless, is_triangle_free, max_degree
from .oracle import coloring_space, enumerate_colorings, equivalence_classes, oracle_equivalent

__version__ = "0.1.0"

__all__ = [
    "ChainComponent",
    "EdgeColoring",
    "EdgeStatus",
    "KempeStep",
    "KempeTrace",
    "MissingAssignment",
    "apply_trace",
    "choose_missing",
    "classify_edges",
    "kempe_component",
    "kempe_swap",
    "missing_colors",
    "validate_proper",
    "verify_trace",
    "align_first_class",
    "class2_transform",
    "find_coloring",
    "find_delta_coloring",
    "project_trace",
    "transform",
    "Fan",
    "build_fan",
    "fan_digraph",
    "is_saturated",
    "shift_path_fan",
    "shift_target",
    "corpus",
    "double_graph",
    "prop31_generate",
    "ChordWitness",
    "Graph",
    "chord_witness",
    "diameter",
    "is_chordless",
    "is_triangle_free",
    "max_degree",
    "coloring_space",
    "enumerate_colorings",
    "equivalence_classes",
    "oracle_equivalent",
]
