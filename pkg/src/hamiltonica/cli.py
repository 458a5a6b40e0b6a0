"""Command-line interface: ``hamiltonica gen|solve|check|verify``.

Exit codes: 0 success (found / all pass), 1 negative (not Hamiltonian / any
fail / invalid certificate), 2 undecided (budget exhausted / skipped checks),
3 usage error, 4 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import checks, io
from .constructions import build_t_delta, cartesian_product, cycle_graph, path_graph, star
from .factors import (
    NoPathFactorWitness,
    PathSystem,
    SearchBudgetExceeded,
    akiyama_witness,
    check_witness,
    find_path_factor,
    is_path_factor,
)
from .graph import Graph, InputError, VertexSet
from .hamiltonicity import DEFAULT_BUDGET, Outcome, find_hamiltonian_cycle, verify_cycle
from .toughness import NotOneToughWitness, check_tough_witness, is_one_tough

log = logging.getLogger("hamiltonica")

EXIT_OK, EXIT_NEGATIVE, EXIT_UNDECIDED, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_graph(path: str) -> Graph:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return io.loads(text)


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def threads() -> int:
    raw = os.environ.get("HAMILTONICA_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputError(f"HAMILTONICA_THREADS must be an integer, got {raw!r}")


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "tdelta":
        g = build_t_delta(args.delta)
    elif kind == "path":
        g = path_graph(args.n)
    elif kind == "cycle":
        g = cycle_graph(args.n)
    elif kind == "star":
        g = star(args.n)
    else:
        g = cartesian_product(_read_graph(args.left), _read_graph(args.right))
    _emit(io.dumps(g, args.format), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------


def cmd_solve(args) -> int:
    g = _read_graph(args.graph)
    if args.problem == "ham":
        v = find_hamiltonian_cycle(g, args.budget)
        doc = v.to_json()
        code = {Outcome.FOUND: EXIT_OK, Outcome.NOT_HAMILTONIAN: EXIT_NEGATIVE, Outcome.UNKNOWN: EXIT_UNDECIDED}[v.outcome]
    elif args.problem == "factor":
        try:
            ps = find_path_factor(g, budget=args.budget)
        except SearchBudgetExceeded:
            doc, code = {"verdict": "unknown"}, EXIT_UNDECIDED
        else:
            if ps is not None:
                doc, code = {"verdict": "found", "paths": [list(p) for p in ps.paths]}, EXIT_OK
            else:
                w = akiyama_witness(g, heuristic=g.n > 20)
                doc = {"verdict": "absent", "witness": w.to_json() if w else None}
                code = EXIT_NEGATIVE
    else:
        w = is_one_tough(g)
        doc = {"verdict": "one_tough" if w is None else "not_one_tough", "witness": w.to_json() if w else None}
        code = EXIT_OK if w is None else EXIT_NEGATIVE
    text = json.dumps(doc, sort_keys=True) + "\n"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{args.problem}-certificate.json").write_text(text)
    sys.stdout.write(text)
    return code


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def verify_certificate(g: Graph, doc: dict) -> tuple[bool, str]:
    """Re-check a certificate produced by ``solve`` or a check report."""
    if doc.get("cycle") is not None:
        return verify_cycle(g, doc["cycle"]), "hamiltonian cycle"
    if "paths" in doc:
        return is_path_factor(g, PathSystem.of(doc["paths"])), "path factor"
    w = doc.get("witness", doc)
    if isinstance(w, dict) and "s" in w:
        s = VertexSet.of(w["s"])
        if "omega" in w:
            return check_tough_witness(g, NotOneToughWitness(s, w["omega"])), "1-toughness witness"
        if "isolated_after" in w:
            return check_witness(g, NoPathFactorWitness(s, w["isolated_after"])), "path-factor witness"
    raise InputError("unrecognised certificate")


def cmd_verify(args) -> int:
    g = _read_graph(args.graph)
    doc = json.loads(Path(args.certificate).read_text())
    ok, kind = verify_certificate(g, doc)
    print(f"{kind}: {'valid' if ok else 'INVALID'}")
    return EXIT_OK if ok else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------



def _single_check(args) -> checks.CheckReport:
    name = args.check
    if name == "strip-odd-endpoint":
        return checks.check_strip_odd_endpoint(args.n, args.k)
    if name == "strip-endpoint-patterns":
        return checks.check_strip_endpoint_patterns(args.n)
    if name == "no-factor-product":
        return checks.check_no_factor_product(args.max_n, tuple(args.factors), args.budget)
    if name == "tdelta-product":
        return checks.check_tdelta_product(args.delta, args.m, args.budget)
    if name == "positive-side":
        tree = checks._NAMED_TREES[args.tree]()
        return checks.check_positive_side(tree, args.n, args.budget, name=args.tree)
    if name == "tree-times-cycle":
        return checks.check_tree_times_cycle(args.max_tree_n, args.n, args.budget)
    if name == "component-counts":
        return checks.check_component_counts(args.delta, args.m)
    raise InputError(f"unknown check {name!r}")


def cmd_check(args) -> int:
    if args.check == "all":
        reports = checks.run_all(args.profile, workers=threads())
    else:
        reports = [_single_check(args)]
    print(checks.summary_table(reports))
    if args.out:
        checks.write_bundle(reports, args.out)
    if args.json:
        print(json.dumps([r.to_json() for r in reports], sort_keys=True, indent=2))
    return checks.exit_code(reports)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hamiltonica", description="Hamiltonicity, path factors and toughness on small graphs.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate a graph")
    gen_sub = gen.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    for name in ("path", "cycle", "star"):
        sp = gen_sub.add_parser(name)
        sp.add_argument("n", type=int)
    sp = gen_sub.add_parser("tdelta")
    sp.add_argument("--delta", type=int, required=True)
    sp = gen_sub.add_parser("product")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    for sp in gen_sub.choices.values():
        sp.add_argument("--format", choices=io.FORMATS, default="json")
        sp.add_argument("-o", "--output")
    gen.set_defaults(func=cmd_gen)

    solve = sub.add_parser("solve", help="decide a property of a graph file (JSON or graph6)")
    solve.add_argument("graph")
    solve.add_argument("--problem", choices=("ham", "factor", "tough"), default="ham")
    solve.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    solve.add_argument("--out", help="directory for the certificate")
    solve.set_defaults(func=cmd_solve)

    verify = sub.add_parser("verify", help="re-check a certificate against a graph")
    verify.add_argument("certificate")
    verify.add_argument("--graph", required=True)
    verify.set_defaults(func=cmd_verify)

    check = sub.add_parser("check", help="run verification checks")
    check_sub = check.add_subparsers(dest="check", required=True, parser_class=_Parser)
    sp = check_sub.add_parser("all")
    sp.add_argument("--profile", choices=("quick", "full"), default="quick")
    sp = check_sub.add_parser("strip-odd-endpoint")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp = check_sub.add_parser("strip-endpoint-patterns")
    sp.add_argument("--n", type=int, required=True)
    sp = check_sub.add_parser("no-factor-product")
    sp.add_argument("--max-n", type=int, default=6)
    sp.add_argument("--factors", nargs="+", choices=tuple(checks.PENDANT_FACTORS), default=["P2", "P3", "K13"])
    sp = check_sub.add_parser("tdelta-product")
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--m", type=int, nargs="+", required=True)
    sp = check_sub.add_parser("positive-side")
    sp.add_argument("--tree", choices=tuple(checks._NAMED_TREES), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp = check_sub.add_parser("tree-times-cycle")
    sp.add_argument("--max-tree-n", type=int, default=7)
    sp.add_argument("--n", type=int, nargs="+", default=[3, 4, 5])
    sp = check_sub.add_parser("component-counts")
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    for sp in check_sub.choices.values():
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        sp.add_argument("--out", help="directory for report and certificate bundles")
        sp.add_argument("--json", action="store_true", help="also print the reports as JSON")
    check.set_defaults(func=cmd_check)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (InputError, OSError, json.JSONDecodeError) as exc:
        print(f"hamiltonica: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
