"""Plain-text instance, solution and number-list formats.

Instance::

    p cmc <n> <m> <t>
    t <vertex>          (t lines, in terminal order)
    e <u> <v> <w>       (m lines)

Solution::

    s cost <C>
    a <vertex> <terminal>   (n lines)

Number list::

    p numbers <flavor> <count> <target>
    a <value>               (count lines)

Lines starting with ``#`` and blank lines are ignored on input.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .core import CutSolution, Flavor, NumberInstance, WeightedGraph, evaluate
from .errors import CmcError, InvalidInputError


class FormatError(InvalidInputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line.split()


def _ints(fields: list[str], lineno: int) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(fields)!r}", lineno) from None


def parse_instance(text: str, require_connected: bool = True) -> WeightedGraph:
    header = None
    terminals: list[int] = []
    edges: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, fields in _records(text):
        tag = fields[0]
        if header is None:
            if tag != "p" or len(fields) != 5 or fields[1] != "cmc":
                raise FormatError("expected header 'p cmc <n> <m> <t>'", lineno)
            header = _ints(fields[2:], lineno)
            n = header[0]
            continue
        if tag == "t" and len(fields) == 2:
            (v,) = _ints(fields[1:], lineno)
            if not 1 <= v <= n:
                raise FormatError(f"terminal {v} outside 1..{n}", lineno)
            if v in terminals:
                raise FormatError(f"duplicate terminal {v}", lineno)
            terminals.append(v)
        elif tag == "e" and len(fields) == 4:
            u, v, w = _ints(fields[1:], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(f"edge ({u},{v}) has an endpoint outside 1..{n}", lineno)
            if u == v:
                raise FormatError(f"self-loop at {u}", lineno)
            if w < 0:
                raise FormatError(f"negative weight {w}", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise FormatError(f"duplicate edge ({key[0]},{key[1]})", lineno)
            seen.add(key)
            edges.append((u, v, w))
        else:
            raise FormatError(f"unrecognised line {' '.join(fields)!r}", lineno)
    if header is None:
        raise FormatError("missing header")
    n, m, t = header
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges, found {len(edges)}")
    if len(terminals) != t:
        raise FormatError(f"header declares {t} terminals, found {len(terminals)}")
    try:
        graph = WeightedGraph(n, tuple(edges), tuple(terminals))
        if require_connected:
            graph.require_connected()
    except CmcError as exc:
        raise FormatError(str(exc)) from exc
    return graph


def format_instance(graph: WeightedGraph, comments: list[str] | None = None) -> str:
    """Canonical text: terminals in order, edges sorted as (min, max) pairs."""
    lines = [f"# {c}" for c in comments or []]
    lines.append(f"p cmc {graph.n} {graph.m} {len(graph.terminals)}")
    lines += [f"t {t}" for t in graph.terminals]
    for u, v, w in sorted((min(u, v), max(u, v), w) for u, v, w in graph.edges):
        lines.append(f"e {u} {v} {w}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SolutionRecord:
    cost: int
    assignment: dict[int, int]


def parse_solution(text: str) -> SolutionRecord:
    cost = None
    assignment: dict[int, int] = {}
    for lineno, fields in _records(text):
        if fields[0] == "s" and len(fields) == 3 and fields[1] == "cost":
            if cost is not None:
                raise FormatError("duplicate cost line", lineno)
            (cost,) = _ints(fields[2:], lineno)
        elif fields[0] == "a" and len(fields) == 3:
            v, t = _ints(fields[1:], lineno)
            if v in assignment:
                raise FormatError(f"vertex {v} assigned twice", lineno)
            assignment[v] = t
        else:
            raise FormatError(f"unrecognised line {' '.join(fields)!r}", lineno)
    if cost is None:
        raise FormatError("missing 's cost' line")
    return SolutionRecord(cost, assignment)


def format_solution(solution: CutSolution) -> str:
    lines = [f"s cost {solution.cost}"]
    lines += [f"a {v} {t}" for v, t in enumerate(solution.assignment, start=1)]
    return "\n".join(lines) + "\n"


def solution_from_record(graph: WeightedGraph, record: SolutionRecord) -> CutSolution:
    if max(record.assignment, default=0) > graph.n or len(record.assignment) != graph.n:
        raise InvalidInputError(
            f"solution assigns {len(record.assignment)} vertices, instance has {graph.n}"
        )
    return evaluate(graph, record.assignment)


def format_numbers(inst: NumberInstance) -> str:
    lines = [f"p numbers {inst.flavor.value} {len(inst.numbers)} {inst.target}"]
    lines += [f"a {a}" for a in inst.numbers]
    return "\n".join(lines) + "\n"


def parse_numbers(text: str) -> NumberInstance:
    header = None
    values: list[int] = []
    for lineno, fields in _records(text):
        if header is None:
            if fields[0] != "p" or len(fields) != 5 or fields[1] != "numbers":
                raise FormatError("expected header 'p numbers <flavor> <count> <target>'", lineno)
            try:
                flavor = Flavor(fields[2])
            except ValueError:
                raise FormatError(f"unknown flavor {fields[2]!r}", lineno) from None
            header = (flavor, *_ints(fields[3:], lineno))
        elif fields[0] == "a" and len(fields) == 2:
            values += _ints(fields[1:], lineno)
        else:
            raise FormatError(f"unrecognised line {' '.join(fields)!r}", lineno)
    if header is None:
        raise FormatError("missing header")
    flavor, count, target = header
    if len(values) != count:
        raise FormatError(f"header declares {count} numbers, found {len(values)}")
    return NumberInstance(tuple(values), target, flavor)


def read_instance(path: str | Path) -> WeightedGraph:
    return parse_instance(Path(path).read_text())


def write_instance(graph: WeightedGraph, path: str | Path) -> None:
    Path(path).write_text(format_instance(graph))
