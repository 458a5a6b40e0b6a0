"""Named, runnable checks of the theorem instances this toolkit targets.

Each check returns a :class:`CheckReport`.  A report verifies the listed
instances only; it makes no claim about the general statements behind them.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Optional, Sequence

from .constructions import (
    all_trees,
    build_t_delta,
    cartesian_product,
    cycle_graph,
    double_star,
    fiber,
    path_graph,
    star,
    tdelta_index,
    tdelta_path_factor,
)
from .corpus import connected_graphs_upto
from .factors import (
    EndpointConstraint,
    PathSystem,
    akiyama_witness,
    check_witness,
    count_path_covers,
    find_path_factor,
    is_path_factor,
)
from .frontier import count_strip_covers, strip
from .graph import Graph, InputError, TDelta, connected_components, delete_vertices, is_tree
from .hamiltonicity import DEFAULT_BUDGET, Outcome, find_hamiltonian_cycle, verify_cycle
from .warmstart import solve_product_with_path


class Verdict(Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class Claim:
    statement: str
    scope: str


CLAIMS: dict[str, Claim] = {
    "strip-odd-endpoint": Claim(
        "P_3 x P_n has no path cover whose endpoints all lie in row 2 at columns >= k "
        "and include (2,k), for odd k.",
        "n <= 9, every odd k <= n, backtracking and frontier DP",
    ),
    "strip-endpoint-patterns": Claim(
        "P_3 x P_n has no path cover with endpoints in row 2, (2,k) an endpoint for odd k, "
        "(2,k-1) not an endpoint, and (2,i) an endpoint iff (2,i-1) is for odd i < k.",
        "n <= 9, every odd k and every admissible pattern below k",
    ),
    "no-factor-product": Claim(
        "If G has no path factor and H has a vertex of degree 1 then G x H is not Hamiltonian.",
        "connected G up to max_n vertices, H in {P_2, P_3, K_1,3}",
    ),
    "tdelta-product": Claim(
        "T_Delta has a path factor and maximum degree Delta, and T_Delta x P_m is not "
        "Hamiltonian for m <= 4*Delta - 3.",
        "listed (Delta, m) pairs, exhaustive search",
    ),
    "positive-side": Claim(
        "A tree T with a path factor gives a Hamiltonian T x P_n for even n >= 4*Delta(T) - 2.",
        "listed trees and n, certified cycle",
    ),
    "tree-times-cycle": Claim(
        "For a tree T, T x C_n is Hamiltonian iff Delta(T) <= n.",
        "all trees up to max_tree_n vertices, listed n",
    ),
    "component-counts": Claim(
        "Deleting {a,b,c} x V(P_m) from T_Delta x P_m leaves 2*Delta - 2 components of 3m vertices.",
        "listed (Delta, m)",
    ),
}


@dataclass
class CheckReport:
    check_id: str
    parameters: dict
    verdict: Verdict
    reason: str = ""
    evidence: dict = field(default_factory=dict)
    counterexample: Optional[dict] = None
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_json(self, timing: bool = False) -> dict:
        """JSON form; ``timing=False`` keeps it byte-stable across runs."""
        doc = {
            "check_id": self.check_id,
            "claim": CLAIMS[self.check_id].statement,
            "scope": CLAIMS[self.check_id].scope,
            "parameters": self.parameters,
            "verdict": self.verdict.value,
            "reason": self.reason,
            "evidence": self.evidence,
            "counterexample": self.counterexample,
        }
        if timing:
            doc["wall_time"] = round(self.wall_time, 3)
        return doc


def _timed(fn: Callable[..., CheckReport]) -> Callable[..., CheckReport]:
    def wrapper(*args, **kwargs) -> CheckReport:
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.wall_time = time.perf_counter() - t0
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.__wrapped__ = fn
    return wrapper


def _verdict(ok: bool) -> Verdict:
    return Verdict.PASS if ok else Verdict.FAIL


# ---------------------------------------------------------------------------
# P_3 x P_n strips
# ---------------------------------------------------------------------------

STRIP_LIMIT = 9


def strip_vertex(n: int, x: int, y: int) -> int:
    """Vertex ``(x, y)`` of ``P_3 x P_n`` in 1-based coordinates."""
    if not (1 <= x <= 3 and 1 <= y <= n):
        raise InputError(f"({x},{y}) is not a vertex of P_3 x P_{n}")
    return (x - 1) * n + (y - 1)


def odd_endpoint_constraint(n: int, k: int) -> EndpointConstraint:
    """Endpoints in row 2 at columns ``k..n`` with ``(2,k)`` among them."""
    if k % 2 == 0:
        raise InputError("k must be odd")
    if not 1 <= k <= n:
        raise InputError("need 1 <= k <= n")
    return EndpointConstraint.build(
        allowed=[strip_vertex(n, 2, y) for y in range(k, n + 1)],
        required=[strip_vertex(n, 2, k)],
    )


@_timed
def check_strip_odd_endpoint(n: int, k: int) -> CheckReport:
    """Count covers under :func:`odd_endpoint_constraint` with both engines; pass iff both are 0."""
    if n > STRIP_LIMIT:
        raise InputError(f"exhaustive range is n <= {STRIP_LIMIT}")
    c = odd_endpoint_constraint(n, k)
    g = strip(3, n)
    bt = count_path_covers(g, c)
    dp = count_strip_covers(3, n, c)
    ok = bt == 0 and dp == 0
    reason = "" if ok else ("engines disagree" if bt != dp else "cover found")
    cex = None
    if not ok:
        from .factors import iter_path_covers

        covers = iter_path_covers(g, c)
        cex = {"backtracking": bt, "frontier_dp": dp}
        if covers:
            cex["paths"] = [list(p) for p in covers[0].paths]
    return CheckReport(
        "strip-odd-endpoint",
        {"n": n, "k": k},
        _verdict(ok),
        reason,
        {"backtracking": bt, "frontier_dp": dp},
        cex,
    )


@dataclass(frozen=True)
class EndpointPattern:
    """Which of ``(2,1), ..., (2,k-1)`` are endpoints, given as the set of columns that are."""

    n: int
    k: int
    ends_below: frozenset[int]

    def errors(self, reading: str = "vacuous") -> list[str]:
        out = []
        if self.k % 2 == 0 or not 1 <= self.k <= self.n:
            out.append("k must be odd with 1 <= k <= n")
            return out
        if any(not 1 <= i < self.k for i in self.ends_below):
            out.append("pattern columns must lie in 1..k-1")
        if self.k - 1 in self.ends_below:
            out.append("(2,k-1) must not be an endpoint")
        for i in range(3, self.k, 2):
            if (i in self.ends_below) != (i - 1 in self.ends_below):
                out.append(f"(2,{i}) and (2,{i - 1}) must agree")
        if reading == "strict" and 1 in self.ends_below:
            out.append("(2,1) has no partner column, so it cannot be an endpoint")
        return out

    def constraint(self) -> EndpointConstraint:
        n, k = self.n, self.k
        row = [strip_vertex(n, 2, y) for y in range(1, n + 1)]
        required = [strip_vertex(n, 2, k)] + [strip_vertex(n, 2, i) for i in sorted(self.ends_below)]
        forbidden = [strip_vertex(n, 2, i) for i in range(1, k) if i not in self.ends_below]
        return EndpointConstraint.build(allowed=row, required=required, forbidden=forbidden)


def endpoint_patterns(n: int, k: int, reading: str = "vacuous") -> list[EndpointPattern]:
    """Every admissible pattern below odd ``k``.

    ``reading`` decides column 1, whose partner column 0 does not exist:
    ``"vacuous"`` leaves it free, ``"strict"`` forbids it as an endpoint.
    """
    if reading not in ("vacuous", "strict"):
        raise InputError("reading must be 'vacuous' or 'strict'")
    pairs = [(i - 1, i) for i in range(3, k, 2)]
    first = [()] if k == 1 or reading == "strict" else [(), (1,)]
    out = []
    for head in first:
        for bits in itertools.product((0, 1), repeat=len(pairs)):
            ends = set(head)
            for (a, b), bit in zip(pairs, bits):
                if bit:
                    ends |= {a, b}
            out.append(EndpointPattern(n, k, frozenset(ends)))
    return out


@_timed
def check_strip_endpoint_patterns(n: int, pattern: Optional[EndpointPattern] = None) -> CheckReport:
    """Pass iff every admissible pattern (or the single given one) admits no cover.

    Without a pattern, all odd ``k <= n`` are swept under the vacuous reading
    of column 1; counts under the strict reading are recorded alongside.
    """
    if n > STRIP_LIMIT:
        raise InputError(f"exhaustive range is n <= {STRIP_LIMIT}")
    g = strip(3, n)
    if pattern is not None:
        if pattern.n != n:
            raise InputError("pattern built for a different n")
        errs = pattern.errors()
        if errs:
            raise InputError("; ".join(errs))
        patterns = {"vacuous": [pattern], "strict": []}
    else:
        patterns = {
            reading: [p for k in range(1, n + 1, 2) for p in endpoint_patterns(n, k, reading)]
            for reading in ("vacuous", "strict")
        }
    counts = {}
    bad = None
    for reading, plist in patterns.items():
        total = 0
        for p in plist:
            c = p.constraint()
            bt = count_path_covers(g, c)
            dp = count_strip_covers(3, n, c)
            total += bt
            if (bt or dp) and bad is None:
                bad = {"k": p.k, "ends_below": sorted(p.ends_below), "reading": reading, "backtracking": bt, "frontier_dp": dp}
        counts[reading] = {"patterns": len(plist), "covers": total}
    ok = bad is None
    return CheckReport(
        "strip-endpoint-patterns",
        {"n": n, "pattern": None if pattern is None else {"k": pattern.k, "ends_below": sorted(pattern.ends_below)}},
        _verdict(ok),
        "" if ok else "cover found",
        counts,
        bad,
    )


# ---------------------------------------------------------------------------
# products with a factor lacking a path factor
# ---------------------------------------------------------------------------

PENDANT_FACTORS: dict[str, Callable[[], Graph]] = {
    "P2": lambda: path_graph(2),
    "P3": lambda: path_graph(3),
    "K13": lambda: star(3),
}


def _solve(g: Graph, budget: int):
    if g.n < 3:
        return None
    return find_hamiltonian_cycle(g, budget)


@_timed
def check_no_factor_product(max_n: int, factors: Sequence[str] = ("P2", "P3", "K13"), budget: int = DEFAULT_BUDGET) -> CheckReport:
    """Every connected G on <= max_n vertices with a path-factor witness gives a
    non-Hamiltonian G x H for each listed H."""
    if not 1 <= max_n <= 7:
        raise InputError("max_n must lie in 1..7")
    hs = {name: PENDANT_FACTORS[name]() for name in factors}
    tested = skipped = nodes = 0
    for g in connected_graphs_upto(max_n):
        w = akiyama_witness(g)
        if w is None:
            skipped += 1
            continue
        assert check_witness(g, w)
        for name, h in hs.items():
            v = _solve(cartesian_product(g, h), budget)
            tested += 1
            if v is None:
                continue
            nodes += v.nodes_explored
            if v.outcome is not Outcome.NOT_HAMILTONIAN:
                return CheckReport(
                    "no-factor-product",
                    {"max_n": max_n, "factors": list(factors)},
                    Verdict.FAIL if v.found else Verdict.SKIPPED,
                    f"G x {name}: {v.outcome.value}",
                    {"tested": tested},
                    {"g_edges": [list(e) for e in g.edges()], "g_n": g.n, "h": name, "verdict": v.to_json()},
                )
    return CheckReport(
        "no-factor-product",
        {"max_n": max_n, "factors": list(factors)},
        Verdict.PASS,
        "",
        {"products_tested": tested, "graphs_with_factor_skipped": skipped, "nodes_explored": nodes},
    )


# ---------------------------------------------------------------------------
# T_Delta x P_m
# ---------------------------------------------------------------------------


def tdelta_hypotheses(tree: Graph, delta: int) -> list[str]:
    """Reasons ``tree`` fails to be a tree of maximum degree ``delta`` with a path factor."""
    errs = []
    if not is_tree(tree):
        errs.append("not a tree")
    if tree.max_degree() != delta:
        errs.append(f"maximum degree {tree.max_degree()} != {delta}")
    try:
        canonical = PathSystem.of(tdelta_path_factor(delta))
    except InputError:
        canonical = None
    if canonical is None or not is_path_factor(tree, canonical):
        if find_path_factor(tree) is None:
            errs.append("no path factor")
    return errs


@_timed
def check_tdelta_product(
    delta: int,
    m_list: Iterable[int],
    budget: int = DEFAULT_BUDGET,
    tree: Optional[Graph] = None,
) -> CheckReport:
    """Pass iff the hypotheses hold and every ``T x P_m`` is proved non-Hamiltonian.

    ``tree`` defaults to T_Delta; passing a modified tree is how negative
    controls exercise the hypothesis check.
    """
    if delta < 3:
        raise InputError("Delta must be >= 3")
    m_list = list(m_list)
    for m in m_list:
        if not 2 <= m <= 4 * delta - 3:
            raise InputError(f"m={m} outside 2..{4 * delta - 3}")
    t = build_t_delta(delta) if tree is None else tree
    params = {"delta": delta, "m": m_list, "budget": budget, "tree": "T_Delta" if tree is None else "custom"}
    errs = tdelta_hypotheses(t, delta)
    if errs:
        return CheckReport("tdelta-product", params, Verdict.FAIL, "hypothesis failure: " + "; ".join(errs),
                           {}, {"tree_edges": [list(e) for e in t.edges()]})
    evidence = {}
    verdict = Verdict.PASS
    reasons = []
    cex = None
    for m in m_list:
        v = find_hamiltonian_cycle(cartesian_product(t, path_graph(m)), budget)
        evidence[str(m)] = {"outcome": v.outcome.value, "nodes_explored": v.nodes_explored, "reason": v.reason}
        if v.found:
            verdict = Verdict.FAIL
            reasons.append(f"m={m}: cycle found")
            cex = {"m": m, "cycle": list(v.cycle)}
        elif v.outcome is Outcome.UNKNOWN and verdict is Verdict.PASS:
            verdict = Verdict.SKIPPED
            reasons.append(f"m={m}: budget of {budget} nodes exhausted")
    return CheckReport("tdelta-product", params, verdict, "; ".join(reasons), evidence, cex)


@_timed
def check_positive_side(tree: Graph, n: int, budget: int = DEFAULT_BUDGET, name: str = "tree") -> CheckReport:
    """Pass iff a Hamiltonian cycle of ``tree x P_n`` is found and certified."""
    if not is_tree(tree):
        raise InputError("input is not a tree")
    if find_path_factor(tree) is None:
        raise InputError("tree has no path factor")
    d = tree.max_degree()
    if n % 2 or n < 4 * d - 2:
        raise InputError(f"n must be even and >= {4 * d - 2}")
    g = cartesian_product(tree, path_graph(n))
    v = solve_product_with_path(tree, n, budget)
    ok = v.found and verify_cycle(g, v.cycle)
    params = {"tree": name, "tree_edges": [list(e) for e in tree.edges()], "n": n}
    if ok:
        return CheckReport("positive-side", params, Verdict.PASS, "",
                           {"cycle": list(v.cycle), "nodes_explored": v.nodes_explored, "method": v.reason or "search"})
    verdict = Verdict.SKIPPED if v.outcome is Outcome.UNKNOWN else Verdict.FAIL
    return CheckReport("positive-side", params, verdict, v.outcome.value, {"nodes_explored": v.nodes_explored},
                       None if verdict is Verdict.SKIPPED else {"verdict": v.to_json()})


@_timed
def check_tree_times_cycle(
    max_tree_n: int,
    n_list: Iterable[int],
    budget: int = DEFAULT_BUDGET,
    criterion: Optional[Callable[[Graph, int], bool]] = None,
) -> CheckReport:
    """Solver verdict on ``T x C_n`` equals ``Delta(T) <= n`` for every tree listed.

    ``criterion`` replaces the predicted verdict; negative controls use it.
    """
    if criterion is None:
        criterion = lambda t, n: t.max_degree() <= n  # noqa: E731
    n_list = list(n_list)
    if not 1 <= max_tree_n <= 8:
        raise InputError("max_tree_n must lie in 1..8")
    if any(not 3 <= n <= 6 for n in n_list):
        raise InputError("cycle lengths must lie in 3..6")
    tested = found = 0
    for size in range(1, max_tree_n + 1):
        for t in all_trees(size):
            for n in n_list:
                g = cartesian_product(t, cycle_graph(n))
                v = find_hamiltonian_cycle(g, budget)
                expected = criterion(t, n)
                tested += 1
                if v.outcome is Outcome.UNKNOWN or v.found != expected:
                    return CheckReport(
                        "tree-times-cycle",
                        {"max_tree_n": max_tree_n, "n": n_list},
                        Verdict.SKIPPED if v.outcome is Outcome.UNKNOWN else Verdict.FAIL,
                        f"tree {t.edges()} x C_{n}: expected {expected}, got {v.outcome.value}",
                        {"tested": tested},
                        {"tree_edges": [list(e) for e in t.edges()], "tree_n": t.n, "cycle_length": n, "verdict": v.to_json()},
                    )
                found += v.found
    return CheckReport(
        "tree-times-cycle",
        {"max_tree_n": max_tree_n, "n": n_list},
        Verdict.PASS,
        "",
        {"products_tested": tested, "hamiltonian": found},
    )


def spine_fibres(delta: int, m: int) -> list[int]:
    """Vertices of ``{a, b, c} x V(P_m)`` in ``T_Delta x P_m``."""
    order = 6 * delta - 3
    out = []
    for role in ("a", "b", "c"):
        out.extend(fiber(order, m, tdelta_index(delta, TDelta(role))))
    return sorted(out)


@_timed
def check_component_counts(delta: int, m: int, graph: Optional[Graph] = None) -> CheckReport:
    """Pass iff removing the spine fibres leaves 2*Delta - 2 components of size 3m."""
    if delta < 3 or m < 2:
        raise InputError("need Delta >= 3 and m >= 2")
    g = cartesian_product(build_t_delta(delta), path_graph(m)) if graph is None else graph
    rest, _ = delete_vertices(g, spine_fibres(delta, m))
    sizes = sorted(len(c) for c in connected_components(rest))
    ok = len(sizes) == 2 * delta - 2 and all(s == 3 * m for s in sizes)
    return CheckReport(
        "component-counts",
        {"delta": delta, "m": m},
        _verdict(ok),
        "" if ok else f"component sizes {sizes}",
        {"components": len(sizes), "sizes": sizes},
        None if ok else {"sizes": sizes},
    )


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlannedCheck:
    func: str
    kwargs: tuple

    def run(self) -> CheckReport:
        kwargs = dict(self.kwargs)
        if isinstance(kwargs.get("tree"), str):
            kwargs["name"] = kwargs["tree"]
            kwargs["tree"] = _NAMED_TREES[kwargs["tree"]]()
        return globals()[self.func](**kwargs)


_NAMED_TREES: dict[str, Callable[[], Graph]] = {
    "double_star": double_star,
    "P4": lambda: path_graph(4),
    "T3": lambda: build_t_delta(3),
}


def _plan(func: str, **kwargs) -> PlannedCheck:
    return PlannedCheck(func, tuple(sorted(kwargs.items())))


def plan(profile: str) -> list[PlannedCheck]:
    """Checks run by ``profile``: ``quick`` stays around two minutes, ``full`` goes further."""
    if profile not in ("quick", "full"):
        raise InputError("profile must be 'quick' or 'full'")
    full = profile == "full"
    max_strip = 9 if full else 7
    out = []
    for n in range(1, max_strip + 1):
        for k in range(1, n + 1, 2):
            out.append(_plan("check_strip_odd_endpoint", n=n, k=k))
    for n in range(1, max_strip + 1):
        out.append(_plan("check_strip_endpoint_patterns", n=n))
    out.append(_plan("check_no_factor_product", max_n=7 if full else 6, factors=("P2", "P3", "K13") if full else ("P2", "P3")))
    out.append(_plan("check_tdelta_product", delta=3, m_list=tuple(range(2, 10 if full else 7))))
    # odd m makes the product unbalanced bipartite, so those instances are cheap
    delta4 = (2, 3, 4, 5, 6, 7, 9, 11, 13) if full else (2, 3, 4)
    out.append(_plan("check_tdelta_product", delta=4, m_list=delta4))
    out.append(_plan("check_positive_side", tree="double_star", n=10))
    out.append(_plan("check_positive_side", tree="P4", n=6))
    if full:
        out.append(_plan("check_positive_side", tree="T3", n=10))
    out.append(_plan("check_tree_times_cycle", max_tree_n=8 if full else 7, n_list=(3, 4, 5, 6) if full else (3, 4, 5)))
    for delta in (3, 4, 5):
        for m in range(2, 10):
            out.append(_plan("check_component_counts", delta=delta, m=m))
    return out


def run_all(profile: str = "quick", workers: int = 1) -> list[CheckReport]:
    """Run every planned check; with ``workers > 1`` checks run in separate processes."""
    checks = plan(profile)
    if workers <= 1:
        return [c.run() for c in checks]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(PlannedCheck.run, checks))


def summary_table(reports: Sequence[CheckReport]) -> str:
    rows = [("check", "parameters", "verdict", "seconds")]
    for r in reports:
        params = ",".join(f"{k}={v}" for k, v in r.parameters.items() if k != "tree_edges")
        rows.append((r.check_id, params, r.verdict.value, f"{r.wall_time:.2f}"))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    counts = {v: sum(r.verdict is v for r in reports) for v in Verdict}
    lines.append(f"{counts[Verdict.PASS]} pass, {counts[Verdict.FAIL]} fail, {counts[Verdict.SKIPPED]} skipped")
    return "\n".join(lines)


def exit_code(reports: Sequence[CheckReport]) -> int:
    if any(r.verdict is Verdict.FAIL for r in reports):
        return 1
    if any(r.verdict is Verdict.SKIPPED for r in reports):
        return 2
    return 0


def write_bundle(reports: Sequence[CheckReport], out_dir) -> list[str]:
    """Write each report as JSON, with any counterexample in a file of its own, plus a summary table."""
    import json
    from pathlib import Path

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for i, r in enumerate(reports):
        stem = f"{i:03d}-{r.check_id}"
        doc = r.to_json()
        if r.counterexample is not None:
            cex_path = out / f"{stem}-counterexample.json"
            cex_path.write_text(json.dumps(r.counterexample, sort_keys=True) + "\n")
            doc["counterexample_path"] = cex_path.name
        path = out / f"{stem}.json"
        path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        written.append(str(path))
    (out / "summary.txt").write_text(summary_table(reports) + "\n")
    return written
