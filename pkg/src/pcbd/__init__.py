"""Optimal paired-comparison block designs for two-level attributes."""

from . import hadamard
from .constructions import METHODS, MethodParams, catalog, construct
from .design import BlockedDesign, BlockLayout, DesignClassDescriptor, render_pairs
from .estimation import ModelParams, estimate, monte_carlo, orthogonality_payoff, simulate
from .info import compute_info, evaluate, is_orthogonally_blocked
from .optimality import OracleBudget, brute_force_best, certify, compare_to_oracle

__version__ = "0.1.0"

__all__ = [
    "METHODS",
    "BlockLayout",
    "BlockedDesign",
    "DesignClassDescriptor",
    "MethodParams",
    "ModelParams",
    "OracleBudget",
    "brute_force_best",
    "catalog",
    "certify",
    "compare_to_oracle",
    "compute_info",
    "construct",
    "estimate",
    "evaluate",
    "hadamard",
    "is_orthogonally_blocked",
    "monte_carlo",
    "orthogonality_payoff",
    "render_pairs",
    "simulate",
    "__version__",
]
