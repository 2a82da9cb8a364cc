from .exact import capacity_bound, max_rainbow_size, solve_exact
from .falsify import FalsifyResult, count_rainbow, falsify
from .outcome import ABSENT, BUDGET, FOUND, METHODS, SolveOutcome, SolverParams, Stats
from .pipeline import solve
from .proof_guided import LevelTrace, ProofTrace, identity_violations, proof_guided_augment
from .switching import Augmentation, greedy_matching, switching_augment
from .vsearch import VTable, compute_v_exhaustive, ground_instances, kernel_instances

__all__ = [
    "ABSENT", "BUDGET", "FOUND", "METHODS", "Augmentation", "FalsifyResult", "LevelTrace", "ProofTrace",
    "SolveOutcome", "SolverParams", "Stats", "VTable", "capacity_bound", "compute_v_exhaustive", "count_rainbow",
    "falsify", "greedy_matching", "ground_instances", "identity_violations", "kernel_instances",
    "max_rainbow_size", "proof_guided_augment", "solve", "solve_exact", "switching_augment",
]
