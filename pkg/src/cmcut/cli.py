"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 infeasible (cap, target, no gap found),
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import approx, kernel, oracle, polytope, reductions, treesolve
from .core import NumberInstance, as_tree, validate_connected
from .errors import CmcError, StructureError
from .fileio import (
    format_instance,
    format_numbers,
    format_solution,
    parse_instance,
    parse_solution,
    solution_from_record,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_INVALID = 3


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _tree(graph):
    try:
        return as_tree(graph)
    except StructureError as exc:
        raise StructureError(f"this algorithm requires a tree instance ({exc})") from exc


def cmd_solve(args) -> int:
    graph = parse_instance(_read(args.input))
    if args.algo == "oracle":
        result = oracle.brute_force_cmc(graph, limit=args.limit or oracle.DEFAULT_ASSIGNMENT_LIMIT)
    elif args.algo == "fptas":
        if args.eps is None:
            raise CmcError("--algo fptas requires --eps")
        result = approx.solve_fptas(_tree(graph), args.eps)
    elif args.algo == "fpt":
        result = kernel.solve_fpt(_tree(graph))
    elif args.cap is not None:
        result = treesolve.solve_capped_tree(_tree(graph), args.cap)
        if result is None:
            print(f"no connected cut of cost <= {args.cap}", file=sys.stderr)
            return EXIT_INFEASIBLE
    else:
        result = treesolve.solve_exact_tree(_tree(graph))
    _emit(format_solution(result.solution), args.output)
    return EXIT_OK


def cmd_gen(args) -> int:
    numbers = args.numbers
    if args.reduction == "ss2part":
        if args.target is None:
            raise CmcError("ss2part requires --target")
        part = reductions.subsetsum_to_partition(NumberInstance.subsetsum(numbers, args.target))
        _emit(format_numbers(part), args.output)
        return EXIT_OK
    gen = reductions.GENERATORS[args.reduction](numbers)
    if args.target is not None and args.target != gen.numbers.target:
        raise CmcError(f"--target {args.target} disagrees with the derived target {gen.numbers.target}")
    comments = [
        f"reduction {gen.reduction} scale {gen.scale}",
        f"numbers {','.join(map(str, gen.numbers.numbers))} target {gen.numbers.target}",
    ]
    _emit(format_instance(gen.graph, comments), args.output)
    sidecar = args.sidecar or (f"{args.output}.json" if args.output and args.output != "-" else None)
    if sidecar:
        payload = {
            "reduction": gen.reduction,
            "numbers": list(gen.numbers.numbers),
            "target": gen.numbers.target,
            "scale": gen.scale,
            "annotations": {k: list(v) if isinstance(v, tuple) else v for k, v in gen.annotations.items()},
        }
        Path(sidecar).write_text(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    graph = parse_instance(_read(args.input))
    record = parse_solution(_read(args.solution))
    solution = solution_from_record(graph, record)
    report = validate_connected(graph, solution)
    status = EXIT_OK
    for part in report.failures():
        reasons = []
        if not part.connected:
            reasons.append("disconnected")
        if part.terminal_count != 1 or not part.contains_own_terminal:
            reasons.append(f"{part.terminal_count} terminals")
        print(f"part {part.terminal}: invalid ({', '.join(reasons)})")
        status = EXIT_INVALID
    if solution.cost != record.cost:
        print(f"cost mismatch: file says {record.cost}, recomputed {solution.cost}")
        status = EXIT_INVALID
    if status == EXIT_OK:
        print(f"valid, cost {solution.cost}")
    return status


def cmd_oracle(args) -> int:
    graph = parse_instance(_read(args.input))
    limit = args.limit or oracle.DEFAULT_ASSIGNMENT_LIMIT
    solve = oracle.brute_force_mmc if args.mmc else oracle.brute_force_cmc
    _emit(format_solution(solve(graph, limit=limit).solution), args.output)
    return EXIT_OK


def cmd_stc(args) -> int:
    graph = parse_instance(_read(args.input))
    result = oracle.stc_brute_force(graph, limit=args.limit or oracle.DEFAULT_TREE_LIMIT)
    lines = [f"c stc {result.congestion}"]
    lines += [f"e {u} {v} {c}" for (u, v), c in zip(result.tree, result.profile)]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_gap(args) -> int:
    found = oracle.gap_search(args.limit or 5, args.weights or [1, 2])
    if found is None:
        print("no gap instance in range", file=sys.stderr)
        return EXIT_INFEASIBLE
    comments = [f"min-max cut cost {found.mmc_cost}", f"connected min-max cut cost {found.cmc_cost}"]
    _emit(format_instance(found.graph, comments), args.output)
    return EXIT_OK


def cmd_polytope(args) -> int:
    lines = []
    if args.numbers:
        gen = reductions.gen_xc_tree(args.numbers)
        tree = gen.tree()
    else:
        gen = None
        tree = _tree(parse_instance(_read(args.input)))
    limit = args.limit or max(tree.n, 24)
    vset = polytope.cut_polytope_vertices(tree, limit)
    lines.append(f"c edges {' '.join(f'{u}-{v}' for u, v, _ in vset.edges)}")
    lines += ["v " + " ".join(map(str, vec)) for vec in vset.vectors]
    status = EXIT_OK
    if gen is not None:
        rep = polytope.verify_face_structure(gen, limit)
        lines.append(f"f min_value {rep.min_value} expected {rep.expected_min}")
        lines.append(f"f min_face {'ok' if rep.min_face_matches else 'FAIL'}")
        lines.append(f"f root_identity {'ok' if rep.root_identity_holds else 'FAIL'}")
        lines.append(f"f linear_form {'ok' if rep.linear_form_matches else 'FAIL'}")
        for vec in sorted(rep.projection):
            lines.append("g " + " ".join(map(str, vec)))
        lines.append(f"f projection {'ok' if rep.projection_matches else 'FAIL'}")
        status = EXIT_OK if rep.ok else EXIT_INVALID
    _emit("\n".join(lines) + "\n", args.output)
    return status


def cmd_exactcost(args) -> int:
    if args.target is None:
        raise CmcError("exactcost requires --target")
    graph = parse_instance(_read(args.input))
    found = treesolve.exact_cost_decide(_tree(graph), args.target)
    if found is None:
        print(f"no connected cut of cost exactly {args.target}", file=sys.stderr)
        return EXIT_INFEASIBLE
    _emit(format_solution(found), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cmcut", description="Min-max connected multiway cut tools")
    sub = parser.add_subparsers(dest="command", required=True)

    def io(p, need_input=True):
        p.add_argument("-i", "--input", required=need_input, help="instance file ('-' for stdin)")
        p.add_argument("-o", "--output", help="output file (default stdout)")

    p = sub.add_parser("solve", help="solve an instance")
    io(p)
    p.add_argument("--algo", choices=["exact", "fptas", "fpt", "oracle"], default="exact")
    p.add_argument("--eps", help="approximation parameter for fptas, e.g. 0.5")
    p.add_argument("--cap", type=int, help="only accept cuts of cost <= CAP (exact)")
    p.add_argument("--limit", type=int, help="assignment limit for --algo oracle")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="generate a reduction instance")
    p.add_argument("--reduction", required=True, choices=["k3n", "tw2", "xc", "exactcost", "ss2part"])
    p.add_argument("--numbers", required=True, type=_csv)
    p.add_argument("--target", type=int)
    p.add_argument("-o", "--output")
    p.add_argument("--sidecar", help="annotation JSON path (default <output>.json)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a solution against an instance")
    io(p)
    p.add_argument("-s", "--solution", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive solver for small general graphs")
    io(p)
    p.add_argument("--mmc", action="store_true", help="drop the connectivity requirement")
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("stc", help="spanning tree congestion by enumeration")
    io(p)
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_stc)

    p = sub.add_parser("gap", help="search a 4-terminal graph where connectivity raises the optimum")
    p.add_argument("--limit", type=int, help="maximum vertex count (default 5)")
    p.add_argument("--weights", type=_csv, help="weight set (default 1,2)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("polytope", help="cut polytope vertices; with --numbers also the face report")
    io(p, need_input=False)
    p.add_argument("--numbers", type=_csv)
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("exactcost", help="find a cut of cost exactly --target")
    io(p)
    p.add_argument("--target", type=int)
    p.set_defaults(func=cmd_exactcost)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "polytope" and not args.numbers and not args.input:
        print("error: polytope needs -i or --numbers", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (CmcError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
