"""Instance generators for the hardness constructions.

Every generator multiplies its weights by a fixed ``scale`` so all weights are
integers; costs of the generated instances are in scaled units.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence, Union

from .core import Flavor, NumberInstance, TreeInstance, WeightedGraph, as_tree
from .errors import InvalidInputError

Annotation = Union[int, tuple[int, int]]


@dataclass(frozen=True)
class GeneratedInstance:
    graph: WeightedGraph
    numbers: NumberInstance
    reduction: str
    scale: int
    annotations: dict[str, Annotation] = field(default_factory=dict)

    def tree(self) -> TreeInstance:
        return as_tree(self.graph, self.annotations.get("root", min(self.graph.terminals)))

    def edge_index(self, name: str) -> int:
        u, v = self.annotations[name]
        for j, (a, b, _) in enumerate(self.graph.edges):
            if {a, b} == {u, v}:
                return j
        raise KeyError(name)


def _as_numbers(numbers, flavor: Flavor) -> NumberInstance:
    if isinstance(numbers, NumberInstance):
        if numbers.flavor is not flavor:
            raise InvalidInputError(f"expected a {flavor.value} instance, got {numbers.flavor.value}")
        return numbers
    if flavor is Flavor.THREEWAY:
        return NumberInstance.threeway(numbers)
    return NumberInstance.partition(numbers)


def gen_k3n(numbers: NumberInstance | Sequence[int]) -> GeneratedInstance:
    """Three terminals joined to every number vertex ``v_i`` by edges of weight ``a_i / 2``.

    With ``scale = 2`` the optimum is ``>= 2 * 2N``, with equality exactly when
    the numbers split into three parts of sum ``N``.
    """
    inst = _as_numbers(numbers, Flavor.THREEWAY)
    scale = 2
    k = len(inst.numbers)
    edges = []
    ann: dict[str, Annotation] = {"t1": 1, "t2": 2, "t3": 3}
    for i, a in enumerate(inst.numbers, start=1):
        v = 3 + i
        ann[f"v{i}"] = v
        for t in (1, 2, 3):
            edges.append((t, v, scale * a // 2))
    graph = WeightedGraph(3 + k, tuple(edges), (1, 2, 3))
    return GeneratedInstance(graph, inst, "k3n", scale, ann)


def gen_tw2(numbers: NumberInstance | Sequence[int]) -> GeneratedInstance:
    """Bipartite planar tree-width-2 instance: ``K_{2,n}`` plus one gadget per number.

    ``v_i`` hangs off ``t1`` and ``t2`` by weight-0 edges and off three gadget
    terminals ``p, q, s`` by edges of weight ``a_i / 3``; each of ``p, q, s``
    carries a pendant terminal at weight ``B - a_i / 3``.  With ``scale = 6``
    the optimum equals ``6B`` exactly when the numbers have a partition.
    """
    inst = _as_numbers(numbers, Flavor.PARTITION)
    scale = 6
    big = inst.target
    edges = []
    terminals = [1, 2]
    ann: dict[str, Annotation] = {"t1": 1, "t2": 2}
    for i, a in enumerate(inst.numbers, start=1):
        v = 3 + 7 * (i - 1)
        ann[f"v{i}"] = v
        edges += [(1, v, 0), (2, v, 0)]
        for j, name in enumerate("pqs"):
            g, pend = v + 1 + j, v + 4 + j
            ann[f"{name}{i}"] = g
            ann[f"{name}{i}'"] = pend
            edges.append((v, g, scale * a // 3))
            edges.append((g, pend, scale * big - scale * a // 3))
        terminals += [v + 1, v + 2, v + 3, v + 4, v + 5, v + 6]
    graph = WeightedGraph(2 + 7 * len(inst.numbers), tuple(edges), tuple(terminals))
    return GeneratedInstance(graph, inst, "tw2", scale, ann)


def _xc_edges(inst: NumberInstance, scale: int):
    big = inst.target
    for a in inst.numbers:
        if a > big:
            raise InvalidInputError(f"number {a} exceeds B = {big}")
    edges = []
    terminals = [1]
    ann: dict[str, Annotation] = {"root": 1}
    for i, a in enumerate(inst.numbers, start=1):
        base = 1 + 5 * (i - 1)
        u, x1, x2, x3, x4 = base + 1, base + 2, base + 3, base + 4, base + 5
        ann[f"u{i}"] = u
        for j, x in enumerate((x1, x2, x3, x4), start=1):
            ann[f"x{i}^{j}"] = x
        half = scale * a // 2
        heavy = scale * 3 * big // 2 - scale * a
        named = [(1, u, half), (u, x1, half), (u, x2, half), (x1, x3, heavy), (x2, x4, heavy)]
        for j, (p, q, w) in enumerate(named):
            ann[f"e{i}^{j}"] = (p, q)
            edges.append((p, q, w))
        terminals += [x1, x2, x3, x4]
    return edges, terminals, ann


def gen_xc_tree(numbers: NumberInstance | Sequence[int]) -> GeneratedInstance:
    """Root terminal plus a five-vertex branch per number.

    Branch ``i``: non-terminal ``u_i`` under the root via ``e_i^0``, terminals
    ``x_i^1, x_i^2`` under ``u_i`` via ``e_i^1, e_i^2``, and terminals
    ``x_i^3, x_i^4`` under those via ``e_i^3, e_i^4``.  Weights are ``a_i/2``
    on ``e^0, e^1, e^2`` and ``3B/2 - a_i`` on ``e^3, e^4``, times ``scale = 2``.
    """
    inst = _as_numbers(numbers, Flavor.PARTITION)
    scale = 2
    edges, terminals, ann = _xc_edges(inst, scale)
    graph = WeightedGraph(1 + 5 * len(inst.numbers), tuple(edges), tuple(terminals))
    return GeneratedInstance(graph, inst, "xc", scale, ann)


def gen_exact_cost(numbers: NumberInstance | Sequence[int]) -> GeneratedInstance:
    """:func:`gen_xc_tree` plus one terminal hanging off the root at weight ``2B``.

    The root then always has the largest boundary, ``3B + w(S)/2``, so a cut of
    cost exactly ``7B/2`` exists iff the numbers have a partition.
    """
    inst = _as_numbers(numbers, Flavor.PARTITION)
    scale = 2
    edges, terminals, ann = _xc_edges(inst, scale)
    extra = 2 + 5 * len(inst.numbers)
    edges.append((1, extra, scale * 2 * inst.target))
    terminals.append(extra)
    ann["extra"] = extra
    ann["e_extra"] = (1, extra)
    graph = WeightedGraph(extra, tuple(edges), tuple(terminals))
    return GeneratedInstance(graph, inst, "exactcost", scale, ann)


def subsetsum_to_partition(instance: NumberInstance) -> NumberInstance:
    """Append ``sum(S)`` and ``2 * target``; the new target is ``target + sum(S)``."""
    if instance.flavor is not Flavor.SUBSETSUM:
        raise InvalidInputError("expected a SUBSET-SUM instance")
    total = sum(instance.numbers)
    if instance.target < 1:
        raise InvalidInputError("target must be positive (the appended number 2 * target must be positive)")
    if instance.target > total:
        raise InvalidInputError(f"target {instance.target} exceeds the sum {total}")
    numbers = instance.numbers + (total, 2 * instance.target)
    return NumberInstance(numbers, instance.target + total, Flavor.PARTITION)


def subsets_with_sum(numbers: Sequence[int], target: int) -> list[tuple[int, ...]]:
    """0/1 vectors of every index subset summing to ``target``, in lexicographic order."""
    return [
        bits
        for bits in itertools.product((0, 1), repeat=len(numbers))
        if sum(a for a, b in zip(numbers, bits) if b) == target
    ]


GENERATORS = {
    "k3n": gen_k3n,
    "tw2": gen_tw2,
    "xc": gen_xc_tree,
    "exactcost": gen_exact_cost,
}
