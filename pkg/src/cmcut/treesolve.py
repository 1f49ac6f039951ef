"""Exact dynamic program for the min-max connected multiway cut on trees.

A state of the table at vertex ``u`` after its first ``i`` children describes
the component that contains ``u`` (the *root component*) inside that prefix
subtree: ``(t, k)`` where ``t`` is the number of terminals in it (0 or 1) and
``k`` is the weight of its cut edges inside the prefix.  The stored value is
the largest boundary over the components that are already closed off, i.e.
every component of the prefix except the root component.

Adding child ``c`` over an edge of weight ``w`` either

* cuts the edge: the child's root component is closed with boundary
  ``k_c + w`` (it must hold exactly one terminal) and ``k`` grows by ``w``;
* keeps the edge: the two root components merge, budgets add up, and the
  terminal counts add up (at most one terminal survives).

The optimum is ``min_k max(k, value[1, k])`` at the root.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

from .core import CutSolution, TreeInstance, WeightedGraph, as_tree, evaluate
from .errors import InternalConsistencyError, InvalidInputError, ResourceError

DEFAULT_MAX_STATES = 20_000_000

CUT = 0
KEEP = 1

State = Hashable
# value, (kind, state in the previous prefix, state in the child's full table)
Entry = tuple[int, tuple[int, State, State] | None]


@dataclass(frozen=True)
class SolveResult:
    cost: int
    solution: CutSolution


@dataclass
class DPTable:
    """Per-vertex, per-prefix tables with backpointers.

    ``layers[u][i]`` maps a state of ``T_u^i`` to ``(value, decision)``.  In a
    ``"minmax"`` table states are ``(t, k)``; in an ``"exact"`` table they are
    ``(t, f, k)`` with ``f`` recording that a closed component has boundary
    exactly ``cap``.  Missing states are infeasible.
    """

    instance: TreeInstance
    cap: int
    kind: str
    pruned: bool
    layers: list[list[dict[State, Entry]]]

    def base_state(self, u: int) -> State:
        t = 1 if self.instance.base.is_terminal(u) else 0
        return (t, 0) if self.kind == "minmax" else (t, 0, 0)

    def final(self, u: int | None = None) -> dict[State, Entry]:
        return self.layers[self.instance.root if u is None else u][-1]

    def value(self, u: int, prefix: int, t: int, k: int) -> float:
        """Stored value for ``(t, k)`` on ``T_u^prefix``; ``inf`` if absent."""
        entry = self.layers[u][prefix].get((t, k))
        return float("inf") if entry is None else entry[0]

    def rcp(self, u: int, prefix: int, k: int, extra_terminal: bool = False) -> float:
        """Best max-boundary over connected cuts of ``T_u^prefix`` whose root
        component has boundary exactly ``k``.

        With ``extra_terminal`` the non-terminal ``u`` is treated as a terminal.
        """
        if extra_terminal and self.instance.base.is_terminal(u):
            raise InvalidInputError(f"vertex {u} is already a terminal")
        v = self.value(u, prefix, 0 if extra_terminal else 1, k)
        return max(k, v)

    def rcp_prime(self, u: int, c: int) -> float:
        """Best max-boundary over connected cuts of ``T_u`` when the root
        component's boundary is charged ``c`` extra."""
        best = float("inf")
        for (t, k), (v, _) in self.final(u).items():
            if t == 1:
                best = min(best, max(k + c, v))
        return best


def _offer(table: dict, state, value: int, decision) -> None:
    old = table.get(state)
    if old is None or value < old[0]:
        table[state] = (value, decision)


def _pareto(table: dict) -> dict:
    # (k, v) is dominated by (k', v') with k' <= k and v' <= v for the same t
    kept = {}
    for t in (0, 1):
        best = None
        for state in sorted(s for s in table if s[0] == t):
            value = table[state][0]
            if best is None or value < best:
                kept[state] = table[state]
                best = value
    return kept


def _merge_minmax(prefix: dict, child: dict, w: int, cap: int, prune: bool) -> dict:
    new: dict = {}
    close_val = None
    close_state = None
    for state in sorted(child):
        tc, kc = state
        if tc != 1:
            continue
        val = max(child[state][0], kc + w)
        if close_val is None or val < close_val:
            close_val, close_state = val, state
    ordered = sorted(prefix, key=lambda s: (s[1], s[0]))
    if close_val is not None and close_val <= cap:
        for state in ordered:
            tp, kp = state
            if kp + w <= cap:
                _offer(new, (tp, kp + w), max(prefix[state][0], close_val), (CUT, state, close_state))
    child_states = sorted(child, key=lambda s: (s[1], s[0]))
    for state in ordered:
        tp, kp = state
        vp = prefix[state][0]
        for cstate in child_states:
            tc, kc = cstate
            if tp + tc > 1 or kp + kc > cap:
                continue
            val = max(vp, child[cstate][0])
            if val <= cap:
                _offer(new, (tp + tc, kp + kc), val, (KEEP, state, cstate))
    return _pareto(new) if prune else new


def _merge_exact(prefix: dict, child: dict, w: int, target: int) -> dict:
    new: dict = {}
    closes: dict[int, tuple] = {}
    for state in sorted(child):
        tc, fc, kc = state
        b = kc + w
        if tc == 1 and b <= target:
            closes.setdefault(1 if (fc or b == target) else 0, state)
    ordered = sorted(prefix, key=lambda s: (s[2], s[0], s[1]))
    for state in ordered:
        tp, fp, kp = state
        if kp + w > target:
            continue
        for f_close, cstate in sorted(closes.items()):
            value = max(prefix[state][0], cstate[2] + w)
            new.setdefault((tp, fp | f_close, kp + w), (value, (CUT, state, cstate)))
    child_states = sorted(child, key=lambda s: (s[2], s[0], s[1]))
    for state in ordered:
        tp, fp, kp = state
        for cstate in child_states:
            tc, fc, kc = cstate
            if tp + tc > 1 or kp + kc > target:
                continue
            value = max(prefix[state][0], child[cstate][0])
            new.setdefault((tp + tc, fp | fc, kp + kc), (value, (KEEP, state, cstate)))
    return new


def build_table(
    instance: TreeInstance,
    cap: int | None = None,
    prune: bool = True,
    max_states: int = DEFAULT_MAX_STATES,
) -> DPTable:
    """Run the min-max DP bottom-up with budgets and values limited to ``cap``.

    ``prune`` drops dominated ``(k, value)`` pairs, which keeps the optimum and
    its witness but leaves non-optimal budgets unrepresented; pass
    ``prune=False`` to get the exact-budget table.
    """
    if cap is None:
        cap = instance.base.total_weight
    if cap < 0:
        raise InvalidInputError("cap must be nonnegative")
    table = DPTable(instance, cap, "minmax", prune, [[] for _ in range(instance.n + 1)])
    total = 0
    for u in instance.postorder():
        cur = {table.base_state(u): (0, None)}
        layers = [cur]
        for c in instance.children[u]:
            cur = _merge_minmax(cur, table.final(c), instance.parent_weight[c], cap, prune)
            layers.append(cur)
            total += len(cur)
            if total > max_states:
                raise ResourceError(f"DP table exceeds {max_states} states")
        table.layers[u] = layers
    return table


def build_exact_table(instance: TreeInstance, target: int, max_states: int = DEFAULT_MAX_STATES) -> DPTable:
    if target < 0:
        raise InvalidInputError("target must be nonnegative")
    table = DPTable(instance, target, "exact", False, [[] for _ in range(instance.n + 1)])
    total = 0
    for u in instance.postorder():
        cur = {table.base_state(u): (0, None)}
        layers = [cur]
        for c in instance.children[u]:
            cur = _merge_exact(cur, table.final(c), instance.parent_weight[c], target)
            layers.append(cur)
            total += len(cur)
            if total > max_states:
                raise ResourceError(f"DP table exceeds {max_states} states")
        table.layers[u] = layers
    return table


def reconstruct(table: DPTable, entry: State, graph: WeightedGraph | None = None) -> CutSolution:
    """Follow backpointers from a state of the root's full table to a cut.

    ``graph`` lets callers evaluate the witness under different weights than
    the ones the table was built on (same vertices, edges and terminals).
    """
    inst = table.instance
    if entry not in table.final():
        raise InternalConsistencyError(f"state {entry!r} is not a finite root entry")
    comp = [0] * (inst.n + 1)
    n_comps = 1
    stack = [(inst.root, entry, 0)]
    while stack:
        u, state, cid = stack.pop()
        comp[u] = cid
        layers = table.layers[u]
        for i in range(len(layers) - 1, 0, -1):
            rec = layers[i].get(state)
            if rec is None or rec[1] is None:
                raise InternalConsistencyError(f"dangling backpointer at vertex {u}, prefix {i}")
            kind, prev, cstate = rec[1]
            child = inst.children[u][i - 1]
            if kind == CUT:
                stack.append((child, cstate, n_comps))
                n_comps += 1
            else:
                stack.append((child, cstate, cid))
            state = prev
        if state not in layers[0]:
            raise InternalConsistencyError(f"backpointers end in a wrong base state at vertex {u}")
    owner = [0] * n_comps
    for t in inst.terminals:
        if owner[comp[t]]:
            raise InternalConsistencyError("reconstructed component holds two terminals")
        owner[comp[t]] = t
    if not all(owner):
        raise InternalConsistencyError("reconstructed component holds no terminal")
    return evaluate(graph or inst.base, [owner[comp[v]] for v in range(1, inst.n + 1)])


def _rooted_at_terminal(instance: TreeInstance) -> TreeInstance:
    root = min(instance.terminals)
    return instance if instance.root == root else as_tree(instance.base, root)


def _best_root_entry(table: DPTable):
    best = None
    for state, (value, _) in table.final().items():
        t, k = state
        if t != 1:
            continue
        cost = max(k, value)
        if best is None or (cost, k) < best[0]:
            best = ((cost, k), state)
    return best


def solve_exact_tree(instance: TreeInstance, max_states: int = DEFAULT_MAX_STATES) -> SolveResult:
    """Optimal connected multiway cut of a weighted tree, with a witness."""
    instance = _rooted_at_terminal(instance)
    table = build_table(instance, max_states=max_states)
    best = _best_root_entry(table)
    if best is None:
        raise InternalConsistencyError("tree instance has no connected cut")
    solution = reconstruct(table, best[1])
    return SolveResult(best[0][0], solution)


def saturate(instance: TreeInstance, limit: int) -> TreeInstance:
    """Copy of ``instance`` with every weight clipped to ``limit``."""
    base = instance.base
    graph = WeightedGraph(base.n, tuple((u, v, min(w, limit)) for u, v, w in base.edges), base.terminals)
    return as_tree(graph, instance.root)


def solve_capped_tree(
    instance: TreeInstance, cap: int, max_states: int = DEFAULT_MAX_STATES
) -> SolveResult | None:
    """Optimal cut if its cost is at most ``cap``, otherwise ``None``.

    Weights are clipped to ``cap + 1`` first; an edge that heavy can never be
    cut within budget, so cuts of cost at most ``cap`` are unaffected.
    """
    if cap < 0:
        raise InvalidInputError("cap must be nonnegative")
    instance = _rooted_at_terminal(instance)
    table = build_table(saturate(instance, cap + 1), cap=cap, max_states=max_states)
    best = _best_root_entry(table)
    if best is None:
        return None
    solution = reconstruct(table, best[1], graph=instance.base)
    if solution.cost != best[0][0]:
        raise InternalConsistencyError("capped witness cost differs from table value")
    return SolveResult(solution.cost, solution)


def exact_cost_decide(
    instance: TreeInstance, target: int, max_states: int = DEFAULT_MAX_STATES
) -> CutSolution | None:
    """A connected cut whose largest boundary is exactly ``target``, or ``None``."""
    if target < 0:
        raise InvalidInputError("target must be nonnegative")
    instance = _rooted_at_terminal(instance)
    table = build_exact_table(saturate(instance, target + 1), target, max_states=max_states)
    for state in sorted(table.final()):
        t, f, k = state
        if t == 1 and (f or k == target):
            solution = reconstruct(table, state, graph=instance.base)
            if solution.cost != target:
                raise InternalConsistencyError("exact-cost witness has the wrong cost")
            return solution
    return None
