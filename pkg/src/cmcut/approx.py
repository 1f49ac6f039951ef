"""(1 + eps)-approximation for weighted trees by rounding and scaling.

Phase 1 asks the capped DP for an optimum of cost at most ``ceil(n / eps)``.
If there is none, phase 2 walks a halving sequence of guesses ``G`` for the
optimum.  For each guess the weights are divided by
``d = max(1, floor(eps * G / (2n)))`` and rounded up, and the capped DP runs
on the scaled tree.  For the guess with ``OPT <= G < 2 OPT`` the returned cut
costs at most ``OPT + n * d <= (1 + eps) OPT`` under the original weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import TreeInstance, WeightedGraph, as_tree, evaluate
from .errors import InternalConsistencyError, InvalidInputError
from .treesolve import SolveResult, solve_capped_tree


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass(frozen=True)
class FptasConfig:
    epsilon: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "epsilon", Fraction(str(self.epsilon)) if isinstance(self.epsilon, float) else Fraction(self.epsilon))
        if self.epsilon <= 0:
            raise InvalidInputError("epsilon must be positive")

    def threshold(self, n: int) -> int:
        return _ceil(Fraction(n) / self.epsilon)

    def divisor(self, n: int, guess: int) -> int:
        return max(1, math.floor(self.epsilon * guess / (2 * n)))

    def scaled_cap(self, n: int, guess: int, d: int) -> int:
        return _ceil((1 + self.epsilon) * guess / d) + n


def scale_weights(instance: TreeInstance, d: int) -> TreeInstance:
    """Replace every weight ``w`` by ``ceil(w / d)``."""
    if d < 1:
        raise InvalidInputError("scale divisor must be a positive integer")
    base = instance.base
    edges = tuple((u, v, -(-w // d)) for u, v, w in base.edges)
    return as_tree(WeightedGraph(base.n, edges, base.terminals), instance.root)


def canonical_cut_cost(instance: TreeInstance) -> int:
    """Cost of the cut where each non-terminal follows its parent.

    Rooted at a terminal this is always feasible: each terminal heads its own
    component and every other vertex joins the component above it.
    """
    graph = instance.base
    root = min(graph.terminals)
    tree = instance if instance.root == root else as_tree(graph, root)
    owner = [0] * (graph.n + 1)
    for v in tree.preorder:
        owner[v] = v if graph.is_terminal(v) else owner[tree.parent[v]]
    bd = dict.fromkeys(graph.terminals, 0)
    for u, v, w in graph.edges:
        if owner[u] != owner[v]:
            bd[owner[u]] += w
            bd[owner[v]] += w
    return max(bd.values())


def solve_fptas(instance: TreeInstance, epsilon) -> SolveResult:
    """Connected cut of cost at most ``(1 + epsilon)`` times the optimum.

    ``epsilon`` may be a decimal string, int, Fraction or float; it is handled
    as an exact rational.
    """
    config = FptasConfig(Fraction(epsilon) if isinstance(epsilon, str) else epsilon)
    eps = config.epsilon
    n = instance.n
    floor_guess = max(1, config.threshold(n))

    found = solve_capped_tree(instance, config.threshold(n))
    if found is not None:
        return found

    lower = config.threshold(n) + 1
    best: SolveResult | None = None
    guess = max(canonical_cut_cost(instance), floor_guess)
    while True:
        d = config.divisor(n, guess)
        scaled = scale_weights(instance, d)
        cand = solve_capped_tree(scaled, config.scaled_cap(n, guess, d))
        if cand is None:
            # infeasible means guess < OPT, so every smaller guess is useless
            break
        witness = evaluate(instance.base, cand.solution.assignment)
        original = SolveResult(witness.cost, witness)
        if best is None or original.cost <= best.cost:
            best = original
        # the optimal cut costs at most OPT/d + n after scaling
        lower = max(lower, d * (cand.cost - n))
        if best.cost <= (1 + eps) * lower or guess <= floor_guess:
            break
        guess = max(floor_guess, -(-guess // 2))
    if best is None:
        raise InternalConsistencyError("the first guess is an upper bound and must be feasible")
    return best

