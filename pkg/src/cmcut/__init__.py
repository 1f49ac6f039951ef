"""Solvers, oracles and instance generators for the min-max connected multiway cut."""

from .approx import solve_fptas
from .core import (
    CutSolution,
    NumberInstance,
    TreeInstance,
    WeightedGraph,
    as_tree,
    enumerate_connected_cuts_tree,
    evaluate,
    validate_connected,
)
from .kernel import solve_fpt
from .oracle import brute_force_cmc, brute_force_mmc
from .treesolve import SolveResult, exact_cost_decide, solve_capped_tree, solve_exact_tree

__all__ = [
    "CutSolution",
    "NumberInstance",
    "SolveResult",
    "TreeInstance",
    "WeightedGraph",
    "as_tree",
    "brute_force_cmc",
    "brute_force_mmc",
    "enumerate_connected_cuts_tree",
    "evaluate",
    "exact_cost_decide",
    "solve_capped_tree",
    "solve_exact_tree",
    "solve_fpt",
    "solve_fptas",
    "validate_connected",
]
