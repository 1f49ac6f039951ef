"""Instance and solution data model.

Vertices are the dense integers ``1..n``.  Terminal order is significant: the
i-th terminal owns part ``S_i`` and every per-part vector (boundaries, reports)
is aligned with it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from .errors import InvalidInputError, LimitExceededError, StructureError

INT64_MAX = 2**63 - 1
DEFAULT_ENUMERATION_LIMIT = 24

Edge = tuple[int, int, int]


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected simple graph with nonnegative integer weights and terminals.

    Connectivity is not enforced here because several oracles work on
    vertex-deleted subgraphs; file loading and the tree solvers check it.
    """

    n: int
    edges: tuple[Edge, ...]
    terminals: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple((int(u), int(v), int(w)) for u, v, w in self.edges))
        object.__setattr__(self, "terminals", tuple(int(t) for t in self.terminals))
        if self.n < 1:
            raise InvalidInputError("graph needs at least one vertex")
        seen: set[tuple[int, int]] = set()
        total = 0
        for u, v, w in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InvalidInputError(f"edge ({u},{v}) has an endpoint outside 1..{self.n}")
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            if w < 0:
                raise InvalidInputError(f"edge ({u},{v}) has negative weight {w}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvalidInputError(f"parallel edge ({key[0]},{key[1]})")
            seen.add(key)
            total += w
            if total > INT64_MAX:
                raise InvalidInputError("total edge weight overflows a signed 64-bit integer")
        if not self.terminals:
            raise InvalidInputError("at least one terminal is required")
        if len(set(self.terminals)) != len(self.terminals):
            raise InvalidInputError("terminals must be distinct")
        for t in self.terminals:
            if not 1 <= t <= self.n:
                raise InvalidInputError(f"terminal {t} is not a vertex")

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``adjacency[v]`` lists ``(neighbour, weight)``; index 0 is unused."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n + 1)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def terminal_index(self) -> dict[int, int]:
        return {t: i for i, t in enumerate(self.terminals)}

    @cached_property
    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    def is_terminal(self, v: int) -> bool:
        return v in self.terminal_index

    def is_connected(self) -> bool:
        return len(_reach(self.adjacency, 1, None)) == self.n

    def require_connected(self) -> None:
        if not self.is_connected():
            raise StructureError("graph is not connected")


def _reach(adjacency, start: int, allowed: set[int] | None) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v, _ in adjacency[u]:
            if v not in seen and (allowed is None or v in allowed):
                seen.add(v)
                queue.append(v)
    return seen


@dataclass(frozen=True)
class TreeInstance:
    """Rooted view of a tree-shaped graph with children in ascending id order."""

    base: WeightedGraph
    root: int
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    parent_weight: tuple[int, ...]
    preorder: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def terminals(self) -> tuple[int, ...]:
        return self.base.terminals

    def postorder(self) -> tuple[int, ...]:
        return self.preorder[::-1]

    @cached_property
    def has_terminal_below(self) -> tuple[bool, ...]:
        """Whether the subtree of each vertex (itself included) holds a terminal."""
        flags = [False] * (self.n + 1)
        for v in self.postorder():
            flags[v] = self.base.is_terminal(v) or any(flags[c] for c in self.children[v])
        return tuple(flags)


def as_tree(graph: WeightedGraph, root: int | None = None) -> TreeInstance:
    """Root ``graph`` at ``root`` (lowest-id terminal by default).

    Raises :class:`StructureError` if the graph is not a tree.
    """
    if graph.m != graph.n - 1:
        raise StructureError(f"not a tree: {graph.m} edges on {graph.n} vertices")
    if root is None:
        root = min(graph.terminals)
    if not 1 <= root <= graph.n:
        raise InvalidInputError(f"root {root} is not a vertex")
    parent = [0] * (graph.n + 1)
    pweight = [0] * (graph.n + 1)
    children: list[list[int]] = [[] for _ in range(graph.n + 1)]
    order = [root]
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v, w in graph.adjacency[u]:
            if v in seen:
                continue
            seen.add(v)
            parent[v] = u
            pweight[v] = w
            children[u].append(v)
            queue.append(v)
            order.append(v)
    if len(seen) != graph.n:
        raise StructureError("not a tree: graph is disconnected")
    # preorder from an explicit stack so deep paths do not hit the recursion limit
    preorder = []
    stack = [root]
    while stack:
        u = stack.pop()
        preorder.append(u)
        stack.extend(reversed(children[u]))
    return TreeInstance(
        base=graph,
        root=root,
        parent=tuple(parent),
        children=tuple(tuple(c) for c in children),
        parent_weight=tuple(pweight),
        preorder=tuple(preorder),
    )


@dataclass(frozen=True)
class CutSolution:
    """A vertex-to-terminal assignment; everything else is derived from it.

    ``assignment[v - 1]`` is the terminal vertex that ``v`` is assigned to.
    """

    graph: WeightedGraph = field(repr=False)
    assignment: tuple[int, ...]

    def part_of(self, v: int) -> int:
        return self.assignment[v - 1]

    def as_dict(self) -> dict[int, int]:
        return {v: t for v, t in enumerate(self.assignment, start=1)}

    @cached_property
    def cut_edges(self) -> tuple[Edge, ...]:
        a = self.assignment
        return tuple(e for e in self.graph.edges if a[e[0] - 1] != a[e[1] - 1])

    @cached_property
    def boundaries(self) -> tuple[int, ...]:
        index = self.graph.terminal_index
        bd = [0] * len(self.graph.terminals)
        a = self.assignment
        for u, v, w in self.cut_edges:
            bd[index[a[u - 1]]] += w
            bd[index[a[v - 1]]] += w
        return tuple(bd)

    @property
    def cost(self) -> int:
        return max(self.boundaries)

    def parts(self) -> tuple[frozenset[int], ...]:
        index = self.graph.terminal_index
        parts: list[set[int]] = [set() for _ in self.graph.terminals]
        for v, t in enumerate(self.assignment, start=1):
            parts[index[t]].add(v)
        return tuple(frozenset(p) for p in parts)


def evaluate(graph: WeightedGraph, assignment: Mapping[int, int] | Sequence[int]) -> CutSolution:
    """Build the :class:`CutSolution` for ``assignment``.

    ``assignment`` is either a mapping vertex -> terminal or a sequence whose
    ``i``-th entry is the terminal of vertex ``i + 1``.
    """
    if isinstance(assignment, Mapping):
        extra = set(assignment) - set(range(1, graph.n + 1))
        if extra:
            raise InvalidInputError(f"unknown vertex {min(extra)} in assignment")
        missing = [v for v in range(1, graph.n + 1) if v not in assignment]
        if missing:
            raise InvalidInputError(f"vertex {missing[0]} is not assigned")
        vector = tuple(int(assignment[v]) for v in range(1, graph.n + 1))
    else:
        vector = tuple(int(t) for t in assignment)
        if len(vector) != graph.n:
            raise InvalidInputError(f"assignment has {len(vector)} entries, graph has {graph.n} vertices")
    index = graph.terminal_index
    for v, t in enumerate(vector, start=1):
        if t not in index:
            raise InvalidInputError(f"vertex {v} assigned to {t}, which is not a terminal")
    return CutSolution(graph, vector)


@dataclass(frozen=True)
class PartReport:
    terminal: int
    size: int
    terminal_count: int
    contains_own_terminal: bool
    connected: bool

    @property
    def ok(self) -> bool:
        return self.connected and self.contains_own_terminal and self.terminal_count == 1


@dataclass(frozen=True)
class ValidityReport:
    parts: tuple[PartReport, ...]

    @property
    def valid(self) -> bool:
        return all(p.ok for p in self.parts)

    def failures(self) -> list[PartReport]:
        return [p for p in self.parts if not p.ok]


def validate_connected(graph: WeightedGraph, solution: CutSolution) -> ValidityReport:
    reports = []
    for t, members in zip(graph.terminals, solution.parts()):
        n_terms = sum(1 for v in members if graph.is_terminal(v))
        if members:
            start = t if t in members else min(members)
            connected = len(_reach(graph.adjacency, start, set(members))) == len(members)
        else:
            connected = False
        reports.append(PartReport(t, len(members), n_terms, t in members, connected))
    return ValidityReport(tuple(reports))


def enumerate_connected_cuts_tree(
    instance: TreeInstance, limit: int = DEFAULT_ENUMERATION_LIMIT
) -> Iterator[CutSolution]:
    """Yield every connected multiway cut of a tree exactly once.

    Order is lexicographic over the assignment vector, comparing terminals by
    their position in the terminal list.
    """
    if instance.n > limit:
        raise LimitExceededError(f"tree has {instance.n} vertices, enumeration limit is {limit}")
    graph = instance.base
    index = graph.terminal_index
    order = instance.preorder
    below = instance.has_terminal_below
    # comp[v] is the top vertex of v's component; owner[top] its terminal or 0
    comp = [0] * (graph.n + 1)
    owner: dict[int, int] = {}
    found: list[tuple[int, ...]] = []

    def finish() -> None:
        if all(owner[c] for c in owner):
            found.append(tuple(owner[comp[v]] for v in range(1, graph.n + 1)))

    def place(pos: int) -> None:
        if pos == len(order):
            finish()
            return
        v = order[pos]
        term = graph.is_terminal(v)
        top = comp[instance.parent[v]]
        if not (term and owner[top]):
            comp[v] = top
            prev = owner[top]
            if term:
                owner[top] = v
            place(pos + 1)
            owner[top] = prev
        if below[v]:
            comp[v] = v
            owner[v] = v if term else 0
            place(pos + 1)
            del owner[v]

    root = instance.root
    comp[root] = root
    owner[root] = root if graph.is_terminal(root) else 0
    place(1)
    found.sort(key=lambda a: [index[t] for t in a])
    for vector in found:
        yield CutSolution(graph, vector)


class Flavor(str, Enum):
    PARTITION = "partition"
    THREEWAY = "threeway"
    SUBSETSUM = "subsetsum"


@dataclass(frozen=True)
class NumberInstance:
    """Positive integers plus a target: B for PARTITION/SUBSET-SUM, N for 3-way."""

    numbers: tuple[int, ...]
    target: int
    flavor: Flavor

    def __post_init__(self) -> None:
        object.__setattr__(self, "numbers", tuple(int(a) for a in self.numbers))
        object.__setattr__(self, "flavor", Flavor(self.flavor))
        if not self.numbers:
            raise InvalidInputError("number list is empty")
        if any(a <= 0 for a in self.numbers):
            raise InvalidInputError("numbers must be positive integers")
        total = sum(self.numbers)
        if self.flavor is Flavor.PARTITION and total != 2 * self.target:
            raise InvalidInputError(f"PARTITION needs sum = 2B, got sum {total} and B = {self.target}")
        if self.flavor is Flavor.THREEWAY and total != 3 * self.target:
            raise InvalidInputError(f"3-way partition needs sum = 3N, got sum {total} and N = {self.target}")
        if self.flavor is Flavor.SUBSETSUM and self.target < 0:
            raise InvalidInputError("SUBSET-SUM target must be nonnegative")

    @classmethod
    def partition(cls, numbers: Sequence[int]) -> NumberInstance:
        total = sum(numbers)
        if total % 2:
            raise InvalidInputError(f"PARTITION needs an even sum, got {total}")
        return cls(tuple(numbers), total // 2, Flavor.PARTITION)

    @classmethod
    def threeway(cls, numbers: Sequence[int]) -> NumberInstance:
        total = sum(numbers)
        if total % 3:
            raise InvalidInputError(f"3-way partition needs a sum divisible by 3, got {total}")
        return cls(tuple(numbers), total // 3, Flavor.THREEWAY)

    @classmethod
    def subsetsum(cls, numbers: Sequence[int], target: int) -> NumberInstance:
        return cls(tuple(numbers), target, Flavor.SUBSETSUM)
