"""Vertices of the connected-cut polytope of a tree and its face structure.

A point ``(chi, nu)`` per connected cut: ``chi`` is the 0/1 indicator of the
cut edges in edge-list order and ``nu`` the cut's cost.  Faces are handled
combinatorially as the vertices tight for a valid inequality; no hull is built.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    DEFAULT_ENUMERATION_LIMIT,
    CutSolution,
    Edge,
    TreeInstance,
    enumerate_connected_cuts_tree,
)
from .errors import InvalidInputError
from .reductions import GeneratedInstance, subsets_with_sum


@dataclass(frozen=True)
class PolytopeVertexSet:
    edges: tuple[Edge, ...]
    vectors: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.vectors)


def _chi(cut: CutSolution) -> tuple[int, ...]:
    a = cut.assignment
    return tuple(int(a[u - 1] != a[v - 1]) for u, v, _ in cut.graph.edges)


def cut_polytope_vertices(instance: TreeInstance, limit: int = DEFAULT_ENUMERATION_LIMIT) -> PolytopeVertexSet:
    seen = set()
    vectors = []
    for cut in enumerate_connected_cuts_tree(instance, limit):
        vec = _chi(cut) + (cut.cost,)
        if vec not in seen:
            seen.add(vec)
            vectors.append(vec)
    return PolytopeVertexSet(instance.base.edges, tuple(vectors))


@dataclass(frozen=True)
class FaceReport:
    vertex_count: int
    min_value: int
    expected_min: int
    min_face_matches: bool
    root_identity_holds: bool
    linear_form_matches: bool
    projection: frozenset[tuple[int, ...]]
    partition_solutions: frozenset[tuple[int, ...]]

    @property
    def projection_matches(self) -> bool:
        return self.projection == self.partition_solutions

    @property
    def ok(self) -> bool:
        return (
            self.min_value == self.expected_min
            and self.min_face_matches
            and self.root_identity_holds
            and self.linear_form_matches
            and self.projection_matches
        )


def _branch_data(gen: GeneratedInstance):
    k = len(gen.numbers.numbers)
    e0 = [gen.edge_index(f"e{i}^0") for i in range(1, k + 1)]
    e1 = [gen.edge_index(f"e{i}^1") for i in range(1, k + 1)]
    e2 = [gen.edge_index(f"e{i}^2") for i in range(1, k + 1)]
    return e0, e1, e2


def verify_face_structure(gen: GeneratedInstance, limit: int | None = None) -> FaceReport:
    """Check the min-value face and the partition face of a ``gen_xc_tree`` instance.

    * every cut costs at least ``3B/2`` and the cuts attaining it are exactly
      those whose root-attached set ``S(C)`` has ``w(S) <= B`` and ``S != [n]``;
    * the root boundary equals ``B + w(S)/2`` on every cut, and on the minimum
      face it equals the linear form over the ``e^1, e^2`` edges;
    * the cuts where that form reaches ``3B/2``, projected by
      ``y_i = 1 - x(e_i^0)``, are exactly the partition solutions.

    All values are compared in scaled units.
    """
    if gen.reduction != "xc":
        raise InvalidInputError(f"face structure is defined for xc instances, got {gen.reduction!r}")
    nums = gen.numbers.numbers
    big = gen.numbers.target
    s = gen.scale
    graph = gen.graph
    weights = [w for _, _, w in graph.edges]
    e0, e1, e2 = _branch_data(gen)
    root_idx = graph.terminal_index[gen.annotations["root"]]
    top = s * 3 * big // 2

    cuts = list(enumerate_connected_cuts_tree(gen.tree(), limit or max(graph.n, DEFAULT_ENUMERATION_LIMIT)))
    min_value = min(c.cost for c in cuts)
    identity = True
    face_ok = True
    linear_ok = True
    projection = set()
    for cut in cuts:
        x = _chi(cut)
        in_s = [1 - x[j] for j in e0]
        w_s = sum(a for a, b in zip(nums, in_s) if b)
        root_bd = cut.boundaries[root_idx]
        if 2 * root_bd != s * (2 * big + w_s):
            identity = False
        expected_in_face = w_s <= big and not all(in_s)
        if (cut.cost == top) != expected_in_face:
            face_ok = False
        if cut.cost != top:
            continue
        form = sum(weights[a] * x[a] + weights[b] * x[b] for a, b in zip(e1, e2))
        if form != root_bd or form > top:
            linear_ok = False
        if form == top:
            projection.add(tuple(in_s))
    return FaceReport(
        vertex_count=len({_chi(c) + (c.cost,) for c in cuts}),
        min_value=min_value,
        expected_min=top,
        min_face_matches=face_ok,
        root_identity_holds=identity,
        linear_form_matches=linear_ok,
        projection=frozenset(projection),
        partition_solutions=frozenset(subsets_with_sum(nums, big)),
    )


@dataclass(frozen=True)
class ExactCostReport:
    root_always_max: bool
    target: int
    target_attained: bool
    partition_solvable: bool

    @property
    def ok(self) -> bool:
        return self.root_always_max and self.target_attained == self.partition_solvable


def verify_exact_cost_structure(gen: GeneratedInstance, limit: int | None = None) -> ExactCostReport:
    """On a ``gen_exact_cost`` instance: the root always carries the largest
    boundary, and cost ``7B/2`` occurs iff the numbers have a partition."""
    if gen.reduction != "exactcost":
        raise InvalidInputError(f"expected an exactcost instance, got {gen.reduction!r}")
    graph = gen.graph
    big = gen.numbers.target
    target = gen.scale * 7 * big // 2
    root_idx = graph.terminal_index[gen.annotations["root"]]
    root_max = True
    attained = False
    for cut in enumerate_connected_cuts_tree(gen.tree(), limit or max(graph.n, DEFAULT_ENUMERATION_LIMIT)):
        if cut.boundaries[root_idx] != cut.cost:
            root_max = False
        attained = attained or cut.cost == target
    solvable = bool(subsets_with_sum(gen.numbers.numbers, big))
    return ExactCostReport(root_max, target, attained, solvable)
