"""Command-line front end.

Exit codes: 0 success, 1 a checked property failed, 2 a budget ran out,
3 bad input.  Errors are reported on stderr as one line
``error: <kind>: <reason>``.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import __version__
from .fs_category import FSModuleData, free_module, induce, restrict
from .hilbert import (
    PRINTED_COEFFS,
    RationalGF,
    bounds_report,
    coefficient,
    decomposition_to_json,
    free_hilbert_series,
    poly_exp_decomposition,
    render,
)
from .lemmas import default_b_range, verify_lemma_41, verify_lemma_42
from .stable_graphs import (
    BudgetExceeded,
    StableGraph,
    coarsen,
    enumerate_stable_graphs,
    hasse_edges,
    q_poset,
    s_vector,
    validate,
)
from .symfunc import decompose_degree, multiplicities_to_json

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _coeffs(text: str | None):
    if text is None:
        return PRINTED_COEFFS
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"--coeffs expects four integers r,s,t,u, got {text!r}") from None
    if len(parts) != 4:
        raise InputError(f"--coeffs expects four integers r,s,t,u, got {text!r}")
    return parts


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load_graph(path: str) -> StableGraph:
    try:
        G = StableGraph.from_dict(_read_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad graph file {path}: {exc}") from None
    problem = validate(G)
    if problem:
        raise InputError(f"invalid stable graph: {problem}")
    return G


def _load_module(args) -> FSModuleData:
    if args.free is not None:
        if args.max_degree is None:
            raise InputError("--free needs --max-degree")
        if not 1 <= args.free <= args.max_degree:
            raise InputError("need 1 <= free <= max-degree")
        return free_module(args.free, args.max_degree)
    if args.module is None:
        raise InputError("give --module FILE or --free d --max-degree N")
    try:
        return FSModuleData.from_dict(_read_json(args.module))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad module file {args.module}: {exc}") from None


def _nonneg(name, value):
    if value is None or value < 0:
        raise InputError(f"--{name} must be a non-negative integer")


# -- subcommands ------------------------------------------------------------------


def cmd_enumerate(args):
    _nonneg("g", args.g)
    _nonneg("n", args.n)
    if 2 * args.g - 2 + args.n <= 0:
        raise InputError(f"(g, n) = ({args.g}, {args.n}) is not stable")
    graphs = enumerate_stable_graphs(args.g, args.n, coarse_only=args.coarse, max_dim=args.max_dim, budget=args.budget)
    if args.format == "dot":
        return "".join(G.to_dot(f"G{k}") for k, G in enumerate(graphs)), EXIT_OK
    if args.format == "text":
        return "\n".join(str(G) for G in graphs) + "\n", EXIT_OK
    data = {"g": args.g, "n": args.n, "coarse_only": args.coarse, "count": len(graphs), "graphs": [G.to_dict() for G in graphs]}
    return data, EXIT_OK


def cmd_coarsen(args):
    G = _load_graph(args.graph)
    rng = random.Random(args.seed) if args.seed is not None else None
    H = coarsen(G, rng)
    if args.format == "dot":
        return H.to_dot("coarsening"), EXIT_OK
    if args.format == "text":
        return f"{G}\n-> {H}\ns-vector {list(s_vector(H))}\n", EXIT_OK
    return {"input": G.to_dict(), "coarsening": H.to_dict(), "s_vector": list(s_vector(H)), "seed": args.seed}, EXIT_OK


def cmd_poset(args):
    _nonneg("g", args.g)
    _nonneg("n", args.n)
    if 2 * args.g - 2 + args.n <= 0:
        raise InputError(f"(g, n) = ({args.g}, {args.n}) is not stable")
    elements, rel = q_poset(args.g, args.n)
    hasse = hasse_edges(rel)
    if args.format == "dot":
        lines = ["digraph Q {"]
        for k, G in enumerate(elements):
            lines.append(f'  q{k} [label="{k}: {len(G.genus)}v {G.num_edges}e"];')
        for x, y in hasse:
            lines.append(f"  q{x} -> q{y};")
        lines.append("}")
        return "\n".join(lines) + "\n", EXIT_OK
    if args.format == "text":
        out = [f"{k}: {G}" for k, G in enumerate(elements)]
        out += [f"{x} < {y}" for x, y in hasse]
        return "\n".join(out) + "\n", EXIT_OK
    return {"g": args.g, "n": args.n, "elements": [G.to_dict() for G in elements], "hasse": [list(p) for p in hasse]}, EXIT_OK


def cmd_lemma41(args):
    _nonneg("g", args.g)
    _nonneg("i", args.i)
    coeffs = _coeffs(args.coeffs)
    if min(coeffs[:3]) < 0:
        raise InputError("r, s, t must be non-negative")
    report = verify_lemma_41(args.g, args.i, coeffs, budget=args.budget)
    code = EXIT_OK if report["all_pass"] else EXIT_FAIL
    if args.format == "text":
        lines = [
            f"g={args.g} i={args.i} coeffs={','.join(map(str, coeffs))}",
            f"graphs checked: {report['graphs_checked']}",
            f"max legs: {report['max_n']}  bound: {report['bound']}",
            "PASS" if report["all_pass"] else "FAIL",
        ]
        return "\n".join(lines) + "\n", code
    return report, code


def cmd_lemma42(args):
    for name in ("a", "e", "i", "b_max"):
        _nonneg(name.replace("_", "-"), getattr(args, name))
    coeffs = _coeffs(args.coeffs)
    start = args.b_min if args.b_min is not None else default_b_range(args.a, args.e, args.i, 1, coeffs)[0]
    b_range = range(start, args.b_max + 1)
    report = verify_lemma_42(args.a, args.e, args.i, b_range, method=args.method, coeffs=coeffs, budget=args.budget)
    code = EXIT_OK if report["all_pass"] else EXIT_FAIL
    if args.format == "dot":
        return "".join(w["dot"] for w in report["witnesses"]), code
    if args.format == "text":
        lines = [
            f"a={args.a} e={args.e} i={args.i} threshold={report['params']['threshold']} method={args.method}",
            f"b checked: {report['params']['b']}",
            f"graphs checked: {report['graphs_checked']}",
            "PASS" if report["all_pass"] else f"FAIL ({len(report['witnesses'])} counterexamples)",
        ]
        return "\n".join(lines) + "\n", code
    return report, code


def _parse_gf(args) -> RationalGF:
    if args.free is not None:
        if args.free < 1:
            raise InputError("--free must be positive")
        return free_hilbert_series(args.free)
    if args.numerator is None or args.denominator is None:
        raise InputError("give --free d, or --numerator and --denominator")
    try:
        num = tuple(Fraction(x) for x in args.numerator.split(","))
        den = {}
        for part in args.denominator.split(","):
            j, d = part.split(":")
            den[int(j)] = int(d)
        return RationalGF(num, den)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad series: {exc}") from None


def cmd_hilbert(args):
    gf = _parse_gf(args)
    _nonneg("upto", args.upto)
    coeffs = [coefficient(gf, n) for n in range(args.upto + 1)]
    decomp = poly_exp_decomposition(gf)
    if args.format == "text":
        lines = [render(gf), "coefficients: " + ",".join(str(c) for c in coeffs)]
        for item in decomposition_to_json(decomp):
            lines.append(f"base {item['base']}: " + ",".join(item["poly"]))
        return "\n".join(lines) + "\n", EXIT_OK
    return {
        "series": render(gf),
        "numerator": [str(c) for c in gf.numerator],
        "denominator_exponents": {str(j): d for j, d in gf.denominator_exponents.items()},
        "coefficients": [str(c) for c in coeffs],
        "decomposition": decomposition_to_json(decomp),
    }, EXIT_OK


def cmd_decompose(args):
    M = _load_module(args)
    degrees = [args.degree] if args.degree is not None else list(range(1, M.max_degree + 1))
    if any(not 1 <= m <= M.max_degree for m in degrees):
        raise InputError(f"degree outside 1..{M.max_degree}")
    try:
        result = [{"degree": m, "multiplicities": multiplicities_to_json(decompose_degree(M, m))} for m in degrees]
    except ValueError as exc:
        print(f"error: assertion: {exc}", file=sys.stderr)
        return None, EXIT_FAIL
    if args.format == "text":
        lines = []
        for entry in result:
            terms = " + ".join(f"{x['multiplicity']}*{tuple(x['partition'])}" for x in entry["multiplicities"])
            lines.append(f"degree {entry['degree']}: {terms or '0'}")
        return "\n".join(lines) + "\n", EXIT_OK
    return {"degrees": result}, EXIT_OK


def cmd_restrict(args):
    M = _load_module(args)
    if not 1 <= args.to <= M.max_degree:
        raise InputError(f"--to must lie in 1..{M.max_degree}")
    return restrict(M, args.to).to_dict(), EXIT_OK


def cmd_induce(args):
    M = _load_module(args)
    if args.to < M.max_degree:
        raise InputError("--to must be at least the module's max degree")
    return induce(M, args.to).to_dict(), EXIT_OK


def cmd_bounds(args):
    gs = [args.g] if args.g is not None else list(range(0, 4))
    is_ = [args.i] if args.i is not None else list(range(0, 4))
    for g in gs:
        _nonneg("g", g)
    for i in is_:
        _nonneg("i", i)
    rows = [bounds_report(g, i) for g in gs for i in is_]
    if args.format == "text":
        lines = ["g  i  f(i,g,(i+1)g)  compositional  printed  proof-variant  flag"]
        for r in rows:
            flag = "DISCREPANCY" if r["discrepancy"] else "ok"
            lines.append(
                f"{r['g']}  {r['i']}  {r['f_printed']}  {r['p_compositional']}  {r['p_printed']}  {r['p_proof_variant']}  {flag}"
            )
        return "\n".join(lines) + "\n", EXIT_OK
    return {"rows": rows}, EXIT_OK


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "dot", "text"], default="json")
    common.add_argument("--output", help="write here instead of stdout")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--budget", type=int, default=None, help="enumeration budget (default: STRATA_BUDGET or 2000000)")

    parser = _Parser(prog="strata", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("enumerate", parents=[common], help="list Stab(g, n) or Q(g, n)")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coarse", action="store_true", help="only coarse graphs")
    p.add_argument("--max-dim", type=int, default=None)
    p.set_defaults(run=cmd_enumerate)

    p = sub.add_parser("coarsen", parents=[common], help="coarsen a graph given as JSON")
    p.add_argument("--graph", required=True)
    p.set_defaults(run=cmd_coarsen)

    p = sub.add_parser("poset", parents=[common], help="the poset Q(g, n)")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(run=cmd_poset)

    p = sub.add_parser("verify-lemma41", parents=[common], help="check the leg-count bound on coarse graphs")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--coeffs", help="r,s,t,u for f = r i + s e + t a + u")
    p.set_defaults(run=cmd_lemma41)

    p = sub.add_parser("verify-lemma42", parents=[common], help="check the trichotomy on coarsening fibers")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--b-max", type=int, required=True)
    p.add_argument("--b-min", type=int, default=None)
    p.add_argument("--coeffs")
    p.add_argument("--method", choices=["search", "fiber"], default="search")
    p.set_defaults(run=cmd_lemma42)

    p = sub.add_parser("hilbert", parents=[common], help="series, coefficients and decomposition")
    p.add_argument("--free", type=int, default=None)
    p.add_argument("--numerator", help="comma-separated coefficients c0,c1,...")
    p.add_argument("--denominator", help="comma-separated j:d_j pairs")
    p.add_argument("--upto", type=int, default=10)
    p.set_defaults(run=cmd_hilbert)

    for name, func, help_text in (
        ("decompose", cmd_decompose, "decompose degrees into irreducibles"),
        ("restrict", cmd_restrict, "restrict a module"),
        ("induce", cmd_induce, "induce a module"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--module", help="module JSON file")
        p.add_argument("--free", type=int, default=None, help="use the free module on d")
        p.add_argument("--max-degree", type=int, default=None)
        if name == "decompose":
            p.add_argument("--degree", type=int, default=None)
        else:
            p.add_argument("--to", type=int, required=True)
        p.set_defaults(run=func)

    p = sub.add_parser("bounds", parents=[common], help="f and p bounds in every variant")
    p.add_argument("--g", type=int, default=None)
    p.add_argument("--i", type=int, default=None)
    p.set_defaults(run=cmd_bounds)
    return parser


def _emit(payload, fmt: str, output: str | None) -> None:
    if payload is None:
        return
    if isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise InputError("missing subcommand")
        if args.budget is not None and args.budget <= 0:
            raise InputError("--budget must be positive")
        if args.format == "dot" and args.command not in ("enumerate", "coarsen", "poset", "verify-lemma42"):
            raise InputError(f"{args.command} has no dot output")
        payload, code = args.run(args)
    except InputError as exc:
        print(f"error: input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"error: budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(payload, args.format, args.output)
    if code == EXIT_FAIL:
        print(f"error: assertion: {args.command} found a failing case", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
