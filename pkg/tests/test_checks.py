from __future__ import annotations

import json

import pytest

from hamiltonica import checks
from hamiltonica.checks import (
    CLAIMS,
    CheckReport,
    EndpointPattern,
    Verdict,
    check_component_counts,
    check_no_factor_product,
    check_positive_side,
    check_strip_endpoint_patterns,
    check_strip_odd_endpoint,
    check_tdelta_product,
    check_tree_times_cycle,
    endpoint_patterns,
    exit_code,
    plan,
    spine_fibres,
    strip_vertex,
    summary_table,
    tdelta_hypotheses,
    write_bundle,
)
from hamiltonica.constructions import build_t_delta, cartesian_product, cycle_graph, double_star, path_graph, star
from hamiltonica.factors import EndpointConstraint
from hamiltonica.graph import Graph, InputError, connected_components, delete_vertices
from hamiltonica.hamiltonicity import HamVerdict, Outcome


class TestStripOddEndpoint:
    @pytest.mark.parametrize("n,k", [(5, 3), (3, 1), (7, 5)])
    def test_examples(self, n, k):
        r = check_strip_odd_endpoint(n, k)
        assert r.passed
        assert r.evidence == {"backtracking": 0, "frontier_dp": 0}

    def test_vertex_numbering(self):
        assert strip_vertex(5, 2, 3) == 7
        with pytest.raises(InputError):
            strip_vertex(5, 4, 1)

    @pytest.mark.parametrize("n,k", [(5, 2), (3, 5), (10, 1)])
    def test_bad_parameters(self, n, k):
        with pytest.raises(InputError):
            check_strip_odd_endpoint(n, k)

    def test_negative_control_loose_constraint(self, monkeypatch):
        monkeypatch.setattr(checks, "odd_endpoint_constraint", lambda n, k: EndpointConstraint.build())
        r = check_strip_odd_endpoint(3, 1)
        assert r.verdict is Verdict.FAIL and r.reason == "cover found"
        assert r.counterexample["paths"]

    def test_negative_control_engine_disagreement(self, monkeypatch):
        monkeypatch.setattr(checks, "count_path_covers", lambda g, c: 1)
        r = check_strip_odd_endpoint(5, 3)
        assert r.verdict is Verdict.FAIL and r.reason == "engines disagree"
        assert r.counterexample == {"backtracking": 1, "frontier_dp": 0}


class TestStripEndpointPatterns:
    def test_all_patterns_n5(self):
        r = check_strip_endpoint_patterns(5)
        assert r.passed
        # k=1: 1 pattern; k=3: free column 1 gives 2; k=5: 2 * 2 pairings
        assert r.evidence["vacuous"] == {"patterns": 7, "covers": 0}
        assert r.evidence["strict"] == {"patterns": 4, "covers": 0}

    def test_single_pattern(self):
        r = check_strip_endpoint_patterns(3, EndpointPattern(3, 3, frozenset()))
        assert r.passed and r.parameters["pattern"] == {"k": 3, "ends_below": []}

    def test_pattern_counts(self):
        assert len(endpoint_patterns(7, 7)) == 2 * 2**2
        assert len(endpoint_patterns(7, 7, "strict")) == 2**2
        assert all(not p.errors() for p in endpoint_patterns(9, 9))
        with pytest.raises(InputError):
            endpoint_patterns(5, 3, "loose")

    @pytest.mark.parametrize(
        "pattern",
        [EndpointPattern(5, 3, frozenset({2})), EndpointPattern(5, 5, frozenset({3})), EndpointPattern(5, 4, frozenset())],
    )
    def test_invalid_patterns_rejected(self, pattern):
        assert pattern.errors()
        with pytest.raises(InputError):
            check_strip_endpoint_patterns(5, pattern)

    def test_strict_reading_flags_column_one(self):
        assert EndpointPattern(5, 3, frozenset({1})).errors("strict")
        assert not EndpointPattern(5, 3, frozenset({1})).errors("vacuous")

    def test_negative_control(self, monkeypatch):
        monkeypatch.setattr(EndpointPattern, "constraint", lambda self: EndpointConstraint.build())
        r = check_strip_endpoint_patterns(3)
        assert r.verdict is Verdict.FAIL and r.counterexample["backtracking"] > 0


class TestNoFactorProduct:
    def test_small_sweep(self):
        r = check_no_factor_product(5)
        assert r.passed
        assert r.evidence["products_tested"] > 0 and r.evidence["graphs_with_factor_skipped"] > 0

    def test_range(self):
        with pytest.raises(InputError):
            check_no_factor_product(8)

    def test_negative_control_cycle_factor(self, monkeypatch):
        # C_4 has no degree-1 vertex, and K_1,3 x C_4 is Hamiltonian
        monkeypatch.setitem(checks.PENDANT_FACTORS, "C4", lambda: cycle_graph(4))
        r = check_no_factor_product(4, factors=("C4",))
        assert r.verdict is Verdict.FAIL
        assert r.counterexample["h"] == "C4" and r.counterexample["verdict"]["verdict"] == "found"


class TestTDeltaProduct:
    def test_small_instances(self):
        r = check_tdelta_product(3, [2, 4, 5])
        assert r.passed
        assert all(e["outcome"] == "not_hamiltonian" for e in r.evidence.values())

    def test_odd_count_shortcut(self):
        r = check_tdelta_product(3, [9])
        assert r.passed

    @pytest.mark.parametrize("delta,m", [(3, 1), (3, 10), (2, 3)])
    def test_range(self, delta, m):
        with pytest.raises(InputError):
            check_tdelta_product(delta, [m])

    def test_hypotheses_hold(self):
        for d in (3, 4, 5):
            assert tdelta_hypotheses(build_t_delta(d), d) == []

    def test_negative_control_edge_removed(self):
        t = build_t_delta(3)
        tampered = t.without_edges([t.edges()[0]])
        r = check_tdelta_product(3, [2], tree=tampered)
        assert r.verdict is Verdict.FAIL and r.reason.startswith("hypothesis failure")
        assert "not a tree" in r.reason

    def test_negative_control_no_path_factor(self):
        r = check_tdelta_product(3, [2], tree=star(3))
        assert r.verdict is Verdict.FAIL and "no path factor" in r.reason

    def test_other_trees_meeting_hypotheses_are_accepted(self):
        assert tdelta_hypotheses(double_star(), 3) == []

    def test_negative_control_cycle_reported(self, monkeypatch):
        fake = HamVerdict(Outcome.FOUND, (0, 1, 2), 0, 1, "fake")
        monkeypatch.setattr(checks, "find_hamiltonian_cycle", lambda g, budget: fake)
        r = check_tdelta_product(3, [2])
        assert r.verdict is Verdict.FAIL and r.counterexample["m"] == 2

    def test_budget_exhaustion_skips(self):
        r = check_tdelta_product(3, [6], budget=10)
        assert r.verdict is Verdict.SKIPPED and "budget" in r.reason


class TestPositiveSide:
    @pytest.mark.parametrize("tree,n", [(double_star(), 10), (path_graph(4), 6), (build_t_delta(3), 10)])
    def test_examples(self, tree, n):
        r = check_positive_side(tree, n)
        assert r.passed
        g = cartesian_product(tree, path_graph(n))
        from hamiltonica.hamiltonicity import verify_cycle

        assert verify_cycle(g, r.evidence["cycle"])

    @pytest.mark.parametrize("tree,n", [(path_graph(4), 5), (path_graph(4), 4), (star(3), 12), (cycle_graph(4), 6)])
    def test_hypotheses_enforced(self, tree, n):
        with pytest.raises(InputError):
            check_positive_side(tree, n)

    def test_negative_control_bad_certificate(self, monkeypatch):
        fake = HamVerdict(Outcome.FOUND, tuple(range(24)), 0, 1, "fake")
        monkeypatch.setattr(checks, "solve_product_with_path", lambda tree, n, budget: fake)
        r = check_positive_side(path_graph(4), 6)
        assert r.verdict is Verdict.FAIL


class TestTreeTimesCycle:
    def test_small(self):
        r = check_tree_times_cycle(5, [3, 4])
        assert r.passed and r.evidence["products_tested"] == (1 + 1 + 1 + 2 + 3) * 2

    def test_examples(self):
        from hamiltonica.hamiltonicity import find_hamiltonian_cycle

        assert find_hamiltonian_cycle(cartesian_product(star(3), cycle_graph(3))).found
        assert not find_hamiltonian_cycle(cartesian_product(star(4), cycle_graph(3))).found
        assert find_hamiltonian_cycle(cartesian_product(path_graph(5), cycle_graph(4))).found

    def test_range(self):
        with pytest.raises(InputError):
            check_tree_times_cycle(9, [3])
        with pytest.raises(InputError):
            check_tree_times_cycle(4, [7])

    def test_negative_control_off_by_one(self):
        r = check_tree_times_cycle(4, [3], criterion=lambda t, n: t.max_degree() < n)
        assert r.verdict is Verdict.FAIL
        assert r.counterexample["cycle_length"] == 3


class TestComponentCounts:
    @pytest.mark.parametrize("delta,m,count,size", [(3, 5, 4, 15), (4, 4, 6, 12), (3, 2, 4, 6)])
    def test_examples(self, delta, m, count, size):
        r = check_component_counts(delta, m)
        assert r.passed and r.evidence["components"] == count and set(r.evidence["sizes"]) == {size}

    def test_spine_size(self):
        assert len(spine_fibres(3, 4)) == 12

    def test_negative_control_extra_edge(self):
        g = cartesian_product(build_t_delta(3), path_graph(3))
        rest, index = delete_vertices(g, spine_fibres(3, 3))
        back = {new: old for old, new in index.items()}
        first, second = connected_components(rest)[:2]
        u, w = sorted((back[min(first)], back[min(second)]))
        r = check_component_counts(3, 3, graph=Graph(g.n, g.edges() + ((u, w),)))
        assert r.verdict is Verdict.FAIL and r.evidence["components"] < 4


class TestReports:
    def test_json_is_byte_stable(self):
        a = json.dumps(check_strip_odd_endpoint(5, 3).to_json(), sort_keys=True)
        b = json.dumps(check_strip_odd_endpoint(5, 3).to_json(), sort_keys=True)
        assert a == b
        assert "wall_time" not in a
        assert "wall_time" in check_component_counts(3, 2).to_json(timing=True)

    def test_claims_registry_covers_every_check(self):
        ids = {p.run().check_id for p in plan("quick") if p.func == "check_component_counts"}
        assert ids <= set(CLAIMS)
        assert {pc.func for pc in plan("full")} == {
            "check_strip_odd_endpoint",
            "check_strip_endpoint_patterns",
            "check_no_factor_product",
            "check_tdelta_product",
            "check_positive_side",
            "check_tree_times_cycle",
            "check_component_counts",
        }

    def test_plan_scope(self):
        full = plan("full")
        tdelta = [dict(p.kwargs) for p in full if p.func == "check_tdelta_product"]
        assert {"delta": 3, "m_list": tuple(range(2, 10))} in tdelta
        quick = plan("quick")
        assert not any(p.func == "check_strip_odd_endpoint" and dict(p.kwargs)["n"] > 7 for p in quick)
        with pytest.raises(InputError):
            plan("medium")

    def test_exit_codes(self):
        def rep(v):
            return CheckReport("component-counts", {}, v)

        assert exit_code([rep(Verdict.PASS)]) == 0
        assert exit_code([rep(Verdict.PASS), rep(Verdict.SKIPPED)]) == 2
        assert exit_code([rep(Verdict.SKIPPED), rep(Verdict.FAIL)]) == 1
        assert "1 pass, 0 fail, 1 skipped" in summary_table([rep(Verdict.PASS), rep(Verdict.SKIPPED)])

    def test_bundle_writes_counterexamples(self, tmp_path):
        bad = check_tree_times_cycle(3, [3], criterion=lambda t, n: False)
        good = check_component_counts(3, 2)
        paths = write_bundle([good, bad], tmp_path)
        assert len(paths) == 2
        doc = json.loads((tmp_path / "001-tree-times-cycle.json").read_text())
        assert doc["verdict"] == "fail"
        cex = json.loads((tmp_path / doc["counterexample_path"]).read_text())
        assert cex["cycle_length"] == 3
        assert (tmp_path / "summary.txt").read_text().count("\n") == 4
