"""Rainbow matchings in edge-coloured multigraphs whose colour classes are unions of disjoint cliques."""
from .core import (Edge, Instance, Matching, Switching, apply_switching, check_lemma_hypothesis,
                   enumerate_switchings, is_rainbow_matching, kernel, max_disjoint_colour_edges,
                   validate_instance, validate_switching)
from .generators import RandomSpec, extremal_triangles, random_instance
from .solvers import SolveOutcome, SolverParams, solve, solve_exact

__all__ = [
    "Edge", "Instance", "Matching", "RandomSpec", "SolveOutcome", "SolverParams", "Switching", "apply_switching",
    "check_lemma_hypothesis", "enumerate_switchings", "extremal_triangles", "is_rainbow_matching", "kernel",
    "max_disjoint_colour_edges", "random_instance", "solve", "solve_exact", "validate_instance",
    "validate_switching",
]
