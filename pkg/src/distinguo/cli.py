"""Command-line entry point: ``distinguo <subcommand> ...``.

Exit status is 0 on success (or when a checked property holds), 1 when a
violation is found, and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from distinguo import construct, oracle
from distinguo.bounds import min_k_threshold
from distinguo.dot import dot_emit
from distinguo.exceptions import (
    ConstructionError,
    DisconnectedGraphError,
    GraphFormatError,
    SearchBudgetExceeded,
    SizeLimitError,
)
from distinguo.graph import (
    emit_edge_list,
    emit_graph6,
    generate_family,
    parse_graph,
    petersen_graph,
)
from distinguo.verify import (
    emit_colouring,
    find_monochromatic,
    is_distinguishing,
    parse_colouring,
)

OK, VIOLATION, INPUT_ERROR = 0, 1, 2
ALGOS = ("thm4", "min", "family", "type2", "type2-dist")


def parse_family(spec: str):
    """``"complete_bipartite:4,4"`` -> (kind, graph, params)."""
    name, _, rest = spec.partition(":")
    if name == "petersen":
        return name, petersen_graph(), ()
    try:
        params = tuple(int(x) for x in rest.split(",") if x)
    except ValueError:
        raise ValueError(f"bad family parameters in {spec!r}") from None
    return name, generate_family(name, *params), params


def _budget(args):
    if getattr(args, "node_budget", None) is not None:
        return args.node_budget
    return oracle.default_node_budget()


def _load_graph(args):
    if args.family:
        return parse_family(args.family)
    text = Path(args.input).read_text(encoding="utf-8")
    return None, parse_graph(text, args.input_format), ()


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _add_input(p, required=True):
    src = p.add_mutually_exclusive_group(required=required)
    src.add_argument("--input", "-i", help="graph file")
    src.add_argument("--family", "-f", help="family spec, e.g. star:9 or complete_bipartite:4,4")
    p.add_argument("--input-format", default="edge-list", choices=("edge-list", "graph6"))


def _add_constraints(p):
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--type1", action="store_true", help="forbid monochromatic 2-cycles and 2-paths")
    kind.add_argument("--type2", action="store_true", help="forbid monochromatic 2-paths only")
    p.add_argument("--distinguishing", action="store_true")
    p.add_argument("--node-budget", type=int, default=None)


def _constraints(args):
    return oracle.ConstraintSet(bool(args.type1), True, bool(args.distinguishing))


def cmd_gen(args):
    _, g, _ = parse_family(args.family)
    text = emit_graph6(g) + "\n" if args.format == "graph6" else emit_edge_list(g)
    _write(text, args.output)
    return OK


def cmd_colour(args):
    kind, g, params = _load_graph(args)
    trace = []
    if args.algo == "thm4":
        built = construct.construct_distinguishing_type1(g, node_budget=args.node_budget)
        c, trace = built.colouring, built.trace
    elif args.algo == "min":
        c = construct.colour_type1_minimum(g, args.chi)
    elif args.algo == "family":
        if kind is None or len(params) != 1:
            raise ValueError("--algo family needs --family path|cycle|star|complete:<n>")
        c = construct.colour_family_distinguishing(kind, params[0])
    else:
        if kind != "complete" or len(params) != 1:
            raise ValueError(f"--algo {args.algo} needs --family complete:<n>")
        build = (construct.colour_type2_complete if args.algo == "type2"
                 else construct.colour_distinguishing_type2_complete)
        c = build(params[0])
    _write(emit_colouring(c), args.output)
    if args.trace:
        Path(args.trace).write_text("".join(t.line() + "\n" for t in trace), encoding="utf-8")
    print(f"colours: {c.k}", file=sys.stderr)
    return OK


def cmd_verify(args):
    c = parse_colouring(Path(args.colouring).read_text(encoding="utf-8"))
    status = OK
    patterns = ["two_path"] + (["two_cycle"] if args.type1 else [])
    for pattern in sorted(patterns):
        found = find_monochromatic(c, pattern)
        for w in found:
            print(f"monochromatic {pattern}: " + " ".join(str(x + 1) for x in w))
        if found:
            status = VIOLATION
    if args.distinguishing:
        verdict = is_distinguishing(c, _budget(args))
        if verdict.distinguishing:
            print("distinguishing: yes")
        else:
            status = VIOLATION
            print("distinguishing: no; preserved by " + " ".join(str(x + 1) for x in verdict.witness))
    print("ok" if status == OK else "violation")
    return status


def cmd_index(args):
    _, g, _ = _load_graph(args)
    res = oracle.solve_index(g, _constraints(args), _budget(args), args.max_arcs)
    print(res.k)
    if args.certificate:
        Path(args.certificate).write_text(emit_colouring(res.certificate), encoding="utf-8")
    return OK


def _experiment_rows(args):
    budget = _budget(args)
    if args.experiment == "conjecture":
        for n in range(args.n_min, args.n_max + 1):
            kn = generate_family("complete", n)
            lhs = oracle.solve_index(kn, oracle.TYPE2_D, budget, max_arcs=args.max_arcs or 2 * kn.m)
            q = (n + 1) // 2
            rhs = (oracle.exact_index(generate_family("complete", q), oracle.TYPE2, budget)
                   if q > 1 else 0) + 1
            verdict = "agree" if lhs.k == rhs else "disagree"
            yield (f"K{n}", oracle.TYPE2_D, lhs.k, "-", f"{lhs.proof_status};rhs={rhs};{verdict}")
    elif args.experiment == "stars":
        for d in range(args.n_min, args.n_max + 1):
            res = oracle.solve_index(generate_family("star", d), oracle.TYPE1_D, budget)
            yield (f"K1,{d}", oracle.TYPE1_D, res.k, "-", res.proof_status)
    elif args.experiment == "paths-cycles":
        for n in range(args.n_min, args.n_max + 1):
            for kind in ("path", "cycle"):
                if kind == "cycle" and n < 3:
                    continue
                res = oracle.solve_index(generate_family(kind, n), oracle.TYPE1_D, budget)
                yield (f"{kind[0].upper()}{n}", oracle.TYPE1_D, res.k, "-", res.proof_status)
    elif args.experiment == "complete":
        for n in range(args.n_min, args.n_max + 1):
            res = oracle.solve_index(generate_family("complete", n), oracle.TYPE1_D, budget,
                                     max_arcs=args.max_arcs)
            expected = min_k_threshold(n)
            yield (f"K{n}", oracle.TYPE1_D, res.k, "-", f"{res.proof_status};binomial={expected}")
    else:
        raise ValueError(f"unknown experiment {args.experiment!r}")


def cmd_oracle(args):
    lines = ["graph_id,constraint_set,k,certificate_file,proof_status"]
    if args.output in (None, "-"):
        print(lines[0])
    for row in _experiment_rows(args):
        lines.append(oracle.csv_line(*row))
        if args.output in (None, "-"):
            print(lines[-1], flush=True)
    if args.output not in (None, "-"):
        _write("\n".join(lines) + "\n", args.output)
    return OK


def cmd_dot(args):
    _, g, _ = _load_graph(args)
    c = None
    if args.colouring:
        c = parse_colouring(Path(args.colouring).read_text(encoding="utf-8"))
        if c.graph != g:
            raise ValueError("colouring does not belong to the given graph")
    _write(dot_emit(g, c, args.highlight), args.output)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="distinguo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a family graph")
    p.add_argument("--family", "-f", required=True)
    p.add_argument("--format", default="edge-list", choices=("edge-list", "graph6"))
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("colour", aliases=["color"], help="run a constructor")
    _add_input(p)
    p.add_argument("--algo", default="thm4", choices=ALGOS)
    p.add_argument("--chi", type=int, default=None)
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--trace", help="write one line per BFS group: parent size strategy")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_colour)

    p = sub.add_parser("verify", help="check a colouring file")
    p.add_argument("colouring")
    _add_constraints(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("index", help="exact chromatic index by search")
    _add_input(p)
    _add_constraints(p)
    p.add_argument("--max-arcs", type=int, default=None)
    p.add_argument("--certificate", help="write the optimal colouring here")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("oracle", help="run an oracle experiment, CSV output")
    p.add_argument("experiment", choices=("conjecture", "stars", "paths-cycles", "complete"))
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=7)
    p.add_argument("--max-arcs", type=int, default=None)
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("dot", help="render DOT")
    _add_input(p)
    p.add_argument("--colouring", "-c")
    p.add_argument("--highlight", type=int, default=None)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_dot)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, DisconnectedGraphError, SizeLimitError, ConstructionError,
            SearchBudgetExceeded, ValueError, OSError) as exc:
        print(f"distinguo: error: {exc}", file=sys.stderr)
        return INPUT_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
