"""Kernelization for trees, parameterized by the number of terminals.

Pipeline: root at the lowest-id terminal, drop every vertex with no terminal
below it, contract each path between neighbouring kept vertices (terminals
and vertices of degree at least three) into one edge carrying the path's
minimum weight, solve the small kernel by trying cut-edge sets, and map the
cut back to the original tree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import TreeInstance, WeightedGraph, as_tree, evaluate
from .errors import InternalConsistencyError
from .treesolve import SolveResult


def _relabel(instance: TreeInstance, keep: list[int]) -> TreeInstance:
    ids = {v: i for i, v in enumerate(sorted(keep), start=1)}
    base = instance.base
    edges = tuple((ids[u], ids[v], w) for u, v, w in base.edges if u in ids and v in ids)
    graph = WeightedGraph(len(ids), edges, tuple(ids[t] for t in base.terminals))
    return as_tree(graph, ids[min(base.terminals)])


def _rooted(instance: TreeInstance) -> TreeInstance:
    root = min(instance.terminals)
    return instance if instance.root == root else as_tree(instance.base, root)


def _pruned_vertices(instance: TreeInstance) -> tuple[list[int], list[int]]:
    below = instance.has_terminal_below
    keep = [v for v in range(1, instance.n + 1) if below[v]]
    dropped = [v for v in range(1, instance.n + 1) if not below[v]]
    return keep, dropped


def prune_terminal_free(instance: TreeInstance) -> TreeInstance:
    """Remove every vertex without a terminal in its subtree (rooted at a terminal).

    Survivors are renumbered ``1..n'`` in ascending order of their old ids.
    """
    instance = _rooted(instance)
    keep, _ = _pruned_vertices(instance)
    return _relabel(instance, keep)


@dataclass(frozen=True)
class KernelMapping:
    """Kernel tree plus what each kernel edge stands for in the source tree.

    ``vertices[i - 1]`` is the source id of kernel vertex ``i``.  For kernel
    edge ``j`` (index into ``kernel.base.edges``), ``paths[j]`` lists the
    source edges from the upper endpoint down and ``argmin[j]`` indexes the
    lightest of them.
    """

    kernel: TreeInstance
    source: TreeInstance
    vertices: tuple[int, ...]
    paths: tuple[tuple[tuple[int, int, int], ...], ...]
    argmin: tuple[int, ...]
    pruned: tuple[int, ...] = ()

    def lifted_edge(self, j: int) -> tuple[int, int, int]:
        return self.paths[j][self.argmin[j]]


def contract_paths(instance: TreeInstance) -> KernelMapping:
    """Contract maximal paths between neighbouring kept vertices.

    Expects every leaf to be a terminal (run :func:`prune_terminal_free` first).
    """
    tree = _rooted(instance)
    graph = tree.base
    degree = [len(a) for a in graph.adjacency]
    kept = [v for v in range(1, tree.n + 1) if graph.is_terminal(v) or degree[v] >= 3]
    kept_set = set(kept)
    ids = {v: i for i, v in enumerate(kept, start=1)}
    edges = []
    paths = []
    argmin = []
    position = {v: i for i, v in enumerate(tree.preorder)}
    for v in sorted(kept, key=position.__getitem__):
        if v == tree.root:
            continue
        path = []
        x = v
        while True:
            p = tree.parent[x]
            path.append((p, x, tree.parent_weight[x]))
            if p in kept_set:
                break
            x = p
        path.reverse()
        weights = [w for _, _, w in path]
        lightest = min(weights)
        edges.append((ids[path[0][0]], ids[v], lightest))
        paths.append(tuple(path))
        argmin.append(weights.index(lightest))
    kernel_graph = WeightedGraph(len(kept), tuple(edges), tuple(ids[t] for t in graph.terminals))
    kernel = as_tree(kernel_graph, ids[tree.root])
    return KernelMapping(kernel, tree, tuple(kept), tuple(paths), tuple(argmin))


@dataclass(frozen=True)
class KernelSolve:
    cost: int
    cut: tuple[int, ...]
    subsets_tried: int


def solve_kernel_exhaustive(kernel: TreeInstance) -> KernelSolve:
    """Try cut-edge sets of the kernel; keep the cheapest with one terminal per component.

    A tree split into ``|terminals|`` components needs exactly
    ``|terminals| - 1`` cut edges, so only subsets of that size are tried.
    """
    graph = kernel.base
    k = len(graph.terminals)
    best: KernelSolve | None = None
    tried = 0
    for cut in itertools.combinations(range(graph.m), k - 1):
        tried += 1
        cut_set = set(cut)
        parent = list(range(graph.n + 1))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for j, (u, v, _) in enumerate(graph.edges):
            if j not in cut_set:
                parent[find(u)] = find(v)
        roots = [find(t) for t in graph.terminals]
        if len(set(roots)) != k:
            continue
        owner = {r: t for r, t in zip(roots, graph.terminals)}
        bd = dict.fromkeys(graph.terminals, 0)
        for j in cut:
            u, v, w = graph.edges[j]
            bd[owner[find(u)]] += w
            bd[owner[find(v)]] += w
        cost = max(bd.values())
        if best is None or cost < best.cost:
            best = KernelSolve(cost, cut, 0)
    if best is None:
        raise InternalConsistencyError("kernel has no connected cut")
    return KernelSolve(best.cost, best.cut, tried)


def kernelize(instance: TreeInstance) -> KernelMapping:
    """Prune then contract; the mapping's source is the original tree."""
    tree = _rooted(instance)
    keep, dropped = _pruned_vertices(tree)
    mapping = contract_paths(_relabel(tree, keep))
    old = sorted(keep)

    def up(x: int) -> int:
        return old[x - 1]

    paths = tuple(tuple((up(u), up(v), w) for u, v, w in path) for path in mapping.paths)
    return KernelMapping(
        mapping.kernel, tree, tuple(up(v) for v in mapping.vertices), paths, mapping.argmin, tuple(dropped)
    )


def solve_fpt(instance: TreeInstance) -> SolveResult:
    """Exact optimum through the kernel; pruned vertices follow their nearest kept ancestor."""
    mapping = kernelize(instance)
    result = solve_kernel_exhaustive(mapping.kernel)
    tree = mapping.source
    cut = {(u, v) for u, v, _ in (mapping.lifted_edge(j) for j in result.cut)}
    top = [0] * (tree.n + 1)
    for v in tree.preorder:
        p = tree.parent[v]
        top[v] = v if v == tree.root or (p, v) in cut else top[p]
    owner: dict[int, int] = {}
    for t in tree.terminals:
        if top[t] in owner:
            raise InternalConsistencyError(f"lifted component of vertex {t} holds two terminals")
        owner[top[t]] = t
    missing = [v for v in range(1, tree.n + 1) if top[v] not in owner]
    if missing:
        raise InternalConsistencyError(f"lifted component of vertex {missing[0]} has no terminal")
    solution = evaluate(tree.base, [owner[top[v]] for v in range(1, tree.n + 1)])
    if solution.cost != result.cost:
        raise InternalConsistencyError("lifted cut cost differs from kernel optimum")
    return SolveResult(solution.cost, solution)
