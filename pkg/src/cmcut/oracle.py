"""Exhaustive solvers for small general graphs.

These are the reference answers every other solver is tested against, so they
are deliberately simple: enumerate, evaluate, filter.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .core import CutSolution, WeightedGraph, evaluate, validate_connected
from .errors import InfeasibleError, InvalidInputError, LimitExceededError, UnsupportedError
from .treesolve import SolveResult

DEFAULT_ASSIGNMENT_LIMIT = 10_000_000
DEFAULT_TREE_LIMIT = 1_000_000
_CHUNK = 1 << 15


def _nonterminals(graph: WeightedGraph) -> list[int]:
    return [v for v in range(1, graph.n + 1) if not graph.is_terminal(v)]


def _reachable_terminals(graph: WeightedGraph) -> dict[int, list[int]]:
    """Terminals adjacent to the terminal-free component of each non-terminal.

    In a connected cut the path from a vertex to its terminal avoids every
    other terminal, so these are the only terminals it can be assigned to.
    """
    index = graph.terminal_index
    result: dict[int, list[int]] = {}
    for start in _nonterminals(graph):
        if start in result:
            continue
        comp = {start}
        reach: set[int] = set()
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v, _ in graph.adjacency[u]:
                if graph.is_terminal(v):
                    reach.add(v)
                elif v not in comp:
                    comp.add(v)
                    queue.append(v)
        ordered = sorted(reach, key=index.__getitem__)
        for v in comp:
            result[v] = ordered
    return result


def _parts_connected(graph: WeightedGraph, labels) -> bool:
    adj = graph.adjacency
    seen = [False] * (graph.n + 1)
    for t in graph.terminals:
        lab = labels[t]
        seen[t] = True
        queue = [t]
        while queue:
            u = queue.pop()
            for v, _ in adj[u]:
                if not seen[v] and labels[v] == lab:
                    seen[v] = True
                    queue.append(v)
    return all(seen[1:])


def _scan(graph: WeightedGraph, candidates: list[list[int]], limit: int, connected: bool) -> SolveResult:
    nonterms = _nonterminals(graph)
    radices = [len(c) for c in candidates]
    total = math.prod(radices)
    if total > limit:
        raise LimitExceededError(f"{total} assignments exceed the limit of {limit}")
    if total == 0:
        raise InfeasibleError("some vertex cannot reach any terminal")
    index = graph.terminal_index
    k = len(graph.terminals)
    cand = [np.array([index[t] for t in c], dtype=np.int64) for c in candidates]
    edges = [(u, v, w) for u, v, w in graph.edges if w]
    best: tuple[int, int] | None = None
    best_labels = None
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        rows = np.arange(len(idx))
        labels = np.zeros((len(idx), graph.n + 1), dtype=np.int64)
        for t in graph.terminals:
            labels[:, t] = index[t]
        rem = idx.copy()
        for pos in range(len(nonterms) - 1, -1, -1):
            labels[:, nonterms[pos]] = cand[pos][rem % radices[pos]]
            rem //= radices[pos]
        bd = np.zeros((len(idx), k), dtype=np.int64)
        for u, v, w in edges:
            a, b = labels[:, u], labels[:, v]
            mask = a != b
            bd[rows[mask], a[mask]] += w
            bd[rows[mask], b[mask]] += w
        cost = bd.max(axis=1)
        for i in np.argsort(cost, kind="stable"):
            c = int(cost[i])
            if best is not None and c >= best[0]:
                break
            if not connected or _parts_connected(graph, labels[i]):
                best = (c, start + int(i))
                best_labels = labels[i].copy()
                break
    if best is None:
        raise InfeasibleError("no connected multiway cut exists")
    assignment = [graph.terminals[int(best_labels[v])] for v in range(1, graph.n + 1)]
    solution = evaluate(graph, assignment)
    return SolveResult(solution.cost, solution)


def brute_force_cmc(graph: WeightedGraph, limit: int = DEFAULT_ASSIGNMENT_LIMIT) -> SolveResult:
    """Optimal connected multiway cut by exhaustive assignment.

    Each non-terminal only ranges over the terminals it can reach without
    passing through another terminal; ties go to the lexicographically
    smallest assignment.  Works on disconnected graphs too, provided every
    component holds a terminal.
    """
    reach = _reachable_terminals(graph)
    return _scan(graph, [reach[v] for v in _nonterminals(graph)], limit, connected=True)


def brute_force_mmc(graph: WeightedGraph, limit: int = DEFAULT_ASSIGNMENT_LIMIT) -> SolveResult:
    """Optimal min-max multiway cut without the connectivity requirement."""
    ordered = list(graph.terminals)
    return _scan(graph, [ordered for _ in _nonterminals(graph)], limit, connected=False)


def _components(graph: WeightedGraph, members: set[int]) -> list[set[int]]:
    comps = []
    left = set(members)
    while left:
        start = min(left)
        seen = {start}
        queue = [start]
        while queue:
            u = queue.pop()
            for v, _ in graph.adjacency[u]:
                if v in left and v not in seen:
                    seen.add(v)
                    queue.append(v)
        comps.append(seen)
        left -= seen
    return comps


def count_components(graph: WeightedGraph, cut: CutSolution) -> int:
    """Total number of connected pieces over all parts of ``cut``."""
    return sum(len(_components(graph, set(p))) for p in cut.parts() if p)


def repair_steps(graph: WeightedGraph, cut: CutSolution) -> Iterator[CutSolution]:
    """Yield the cut after each detach-and-reassign round until all parts are connected."""
    if len(graph.terminals) > 3:
        raise UnsupportedError("repair is only defined for at most three terminals")
    for t in graph.terminals:
        if cut.part_of(t) != t:
            raise InvalidInputError(f"terminal {t} is not in its own part")
    labels = list(cut.assignment)
    while True:
        current = evaluate(graph, labels)
        stray = None
        for i, (t, part) in enumerate(zip(graph.terminals, current.parts())):
            for comp in _components(graph, set(part)):
                if t not in comp:
                    stray = (i, comp)
                    break
            if stray:
                break
        if stray is None:
            return
        i, piece = stray
        gain = [0] * len(graph.terminals)
        for u in piece:
            for v, w in graph.adjacency[u]:
                if v not in piece:
                    gain[graph.terminal_index[labels[v - 1]]] += w
        gain[i] = -1
        target = graph.terminals[max(range(len(gain)), key=lambda j: (gain[j], -j))]
        for u in piece:
            labels[u - 1] = target
        yield evaluate(graph, labels)


def repair_to_connected(graph: WeightedGraph, cut: CutSolution) -> CutSolution:
    """Turn a multiway cut with at most three terminals into a connected one of no larger cost."""
    result = cut
    for result in repair_steps(graph, cut):
        pass
    return result


@dataclass(frozen=True)
class StcResult:
    congestion: int
    tree: tuple[tuple[int, int], ...]
    profile: tuple[int, ...]


def spanning_trees(graph: WeightedGraph, limit: int = DEFAULT_TREE_LIMIT) -> Iterator[tuple[tuple[int, int], ...]]:
    """All spanning trees as edge tuples, by include/exclude recursion on the edge list."""
    n = graph.n
    pairs = [(u, v) for u, v, _ in graph.edges]
    m = len(pairs)
    count = 0

    def find(parent: list[int], x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def spans(parent: list[int], rest: Sequence[tuple[int, int]]) -> bool:
        p = parent[:]
        for u, v in rest:
            a, b = find(p, u), find(p, v)
            if a != b:
                p[a] = b
        root = find(p, 1)
        return all(find(p, x) == root for x in range(2, n + 1))

    def rec(i: int, parent: list[int], chosen: list[tuple[int, int]]):
        nonlocal count
        if len(chosen) == n - 1:
            count += 1
            if count > limit:
                raise LimitExceededError(f"more than {limit} spanning trees")
            yield tuple(chosen)
            return
        if m - i < n - 1 - len(chosen):
            return
        u, v = pairs[i]
        a, b = find(parent, u), find(parent, v)
        if a != b:
            p = parent[:]
            p[a] = b
            chosen.append((u, v))
            yield from rec(i + 1, p, chosen)
            chosen.pop()
        if spans(parent, pairs[i + 1:]):
            yield from rec(i + 1, parent, chosen)

    if n == 1:
        yield ()
        return
    start = list(range(n + 1))
    if not spans(start, pairs):
        raise InvalidInputError("graph is not connected")
    yield from rec(0, start, [])


def congestion_profile(graph: WeightedGraph, tree: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    """Number of graph edges whose tree path uses each tree edge (weights ignored)."""
    adj: list[list[int]] = [[] for _ in range(graph.n + 1)]
    for u, v in tree:
        adj[u].append(v)
        adj[v].append(u)
    profile = []
    for u, v in tree:
        side = {u}
        stack = [u]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in side and not (x == u and y == v):
                    side.add(y)
                    stack.append(y)
        profile.append(sum(1 for a, b, _ in graph.edges if (a in side) != (b in side)))
    return tuple(profile)


def optimal_spanning_trees(graph: WeightedGraph, limit: int = DEFAULT_TREE_LIMIT) -> tuple[int, list[tuple]]:
    best = None
    trees: list[tuple] = []
    for tree in spanning_trees(graph, limit):
        c = max(congestion_profile(graph, tree), default=0)
        if best is None or c < best:
            best, trees = c, [tree]
        elif c == best:
            trees.append(tree)
    return best, trees


def stc_brute_force(graph: WeightedGraph, limit: int = DEFAULT_TREE_LIMIT) -> StcResult:
    """Spanning tree congestion by enumerating every spanning tree."""
    best, trees = optimal_spanning_trees(graph, limit)
    tree = trees[0]
    return StcResult(best, tree, congestion_profile(graph, tree))


def _delete_vertex(graph: WeightedGraph, r: int, terminals: Sequence[int]) -> WeightedGraph:
    """``G - r`` with unit weights, vertices above ``r`` shifted down by one."""

    def relabel(x: int) -> int:
        return x - 1 if x > r else x

    edges = tuple((relabel(u), relabel(v), 1) for u, v, _ in graph.edges if r not in (u, v))
    return WeightedGraph(graph.n - 1, edges, tuple(relabel(t) for t in terminals))


def _induced(graph: WeightedGraph, vertices: Sequence[int]) -> WeightedGraph:
    ids = {v: i for i, v in enumerate(sorted(vertices), start=1)}
    edges = tuple((ids[u], ids[v], w) for u, v, w in graph.edges if u in ids and v in ids)
    return WeightedGraph(len(ids), edges, (1,))


@dataclass(frozen=True)
class BoundCheck:
    lhs: int
    rhs: int
    terminals: tuple[int, ...]
    holds: bool


@dataclass(frozen=True)
class BoundReport:
    stc: int
    r: int
    lower: BoundCheck | None
    upper: BoundCheck

    @property
    def ok(self) -> bool:
        return (self.lower is None or self.lower.holds) and self.upper.holds


def verify_stc_bounds(graph: WeightedGraph, r: int, limit: int = DEFAULT_TREE_LIMIT) -> BoundReport:
    """Check both STC-vs-CMC inequalities around vertex ``r``.

    Lower bound: for every optimal spanning tree in which ``r`` is not a leaf,
    ``STC(G) >= CMC(G - r, N_tree(r)) + 1``; ``lower`` is ``None`` when ``r``
    is a leaf of every optimal tree.  Upper bound: with ``N_G(r)`` as
    terminals and ``V_i`` the parts of an optimal connected cut of ``G - r``,
    ``STC(G) <= CMC + max(1, max_i STC(G[V_i]))``.
    """
    if graph.n < 2:
        raise InvalidInputError("bounds need at least two vertices")
    stc, trees = optimal_spanning_trees(graph, limit)

    lower = None
    seen: set[tuple[int, ...]] = set()
    for tree in trees:
        nbrs = tuple(sorted([v for u, v in tree if u == r] + [u for u, v in tree if v == r]))
        if len(nbrs) < 2 or nbrs in seen:
            continue
        seen.add(nbrs)
        cmc = brute_force_cmc(_delete_vertex(graph, r, nbrs)).cost
        check = BoundCheck(stc, cmc + 1, nbrs, stc >= cmc + 1)
        if lower is None or check.rhs > lower.rhs:
            lower = check

    nbrs = tuple(v for v, _ in graph.adjacency[r])
    reduced = _delete_vertex(graph, r, nbrs)
    opt = brute_force_cmc(reduced)
    inner = 0
    for part in opt.solution.parts():
        if len(part) > 1:
            inner = max(inner, stc_brute_force(_induced(reduced, part), limit).congestion)
    rhs = opt.cost + max(1, inner)
    upper = BoundCheck(stc, rhs, nbrs, stc <= rhs)
    return BoundReport(stc, r, lower, upper)


@dataclass(frozen=True)
class GapWitness:
    graph: WeightedGraph
    mmc_cost: int
    cmc_cost: int


def _small_costs(graph: WeightedGraph) -> tuple[int, float]:
    """(min-max cut cost, connected min-max cut cost) by plain enumeration."""
    nonterms = _nonterminals(graph)
    best_any = None
    best_conn = math.inf
    for choice in itertools.product(graph.terminals, repeat=len(nonterms)):
        labels = [0] * (graph.n + 1)
        for t in graph.terminals:
            labels[t] = t
        for v, t in zip(nonterms, choice):
            labels[v] = t
        bd = dict.fromkeys(graph.terminals, 0)
        for u, v, w in graph.edges:
            if labels[u] != labels[v]:
                bd[labels[u]] += w
                bd[labels[v]] += w
        c = max(bd.values())
        if best_any is None or c < best_any:
            best_any = c
        if c < best_conn and _parts_connected(graph, labels):
            best_conn = c
    return best_any, best_conn


def gap_search(
    max_n: int,
    weights: Sequence[int] = (1, 2),
    num_terminals: int = 4,
    costs: tuple[int, int] | None = None,
) -> GapWitness | None:
    """Smallest graph where forcing connected parts raises the min-max cost.

    Vertices ``1..num_terminals`` are terminals.  Graphs are tried by vertex
    count, then edge count, then edge set and weights in lexicographic order.
    With ``costs=(a, b)`` only a witness with exactly those two optima counts.
    """
    if max_n > 6:
        raise InvalidInputError("gap search is limited to at most 6 vertices")
    weights = sorted(set(weights))
    for n in range(num_terminals, max_n + 1):
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        for m in range(n - 1, len(pairs) + 1):
            for subset in itertools.combinations(pairs, m):
                shape = WeightedGraph(n, tuple((u, v, 1) for u, v in subset), tuple(range(1, num_terminals + 1)))
                if not shape.is_connected():
                    continue
                for ws in itertools.product(weights, repeat=m):
                    graph = WeightedGraph(n, tuple((u, v, w) for (u, v), w in zip(subset, ws)), shape.terminals)
                    mmc, cmc = _small_costs(graph)
                    if mmc < cmc and (costs is None or costs == (mmc, cmc)):
                        return GapWitness(graph, mmc, int(cmc))
    return None


def is_connected_cut(graph: WeightedGraph, cut: CutSolution) -> bool:
    return validate_connected(graph, cut).valid
