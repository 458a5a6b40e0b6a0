from __future__ import annotations

import json

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from hamiltonica import io
from hamiltonica.constructions import build_t_delta, cartesian_product, path_graph, petersen_graph, tdelta_times_path
from hamiltonica.factors import EndpointConstraint
from hamiltonica.graph import Graph, InputError, Plain, ProductPair, TDelta


def nx_graph6(g: Graph) -> str:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return nx.to_graph6_bytes(h, header=False).decode().strip()


class TestGraph6:
    def test_petersen(self):
        assert io.to_graph6(petersen_graph()) == "IheA@GUAo"

    @pytest.mark.parametrize("n", [0, 1, 2, 5, 62, 63, 64, 100])
    def test_size_field_matches_networkx(self, n):
        g = path_graph(n).with_labels(None) if n else Graph(0)
        assert io.to_graph6(g) == nx_graph6(g)
        assert io.from_graph6(io.to_graph6(g)) == g

    @given(graphs(max_n=20))
    def test_round_trip_and_networkx(self, g):
        text = io.to_graph6(g)
        assert text == nx_graph6(g)
        assert io.from_graph6(text) == g

    def test_header(self):
        g = petersen_graph()
        assert io.from_graph6(io.to_graph6(g, header=True)) == g

    @pytest.mark.parametrize("bad", ["", "I", "~?", "I\x01"])
    def test_malformed(self, bad):
        with pytest.raises(InputError):
            io.from_graph6(bad)

    def test_networkx_output_parses(self):
        h = nx.gnp_random_graph(30, 0.3, seed=1)
        g = io.from_graph6(nx.to_graph6_bytes(h, header=True).decode())
        assert set(g.edges()) == {tuple(sorted(e)) for e in h.edges()}


class TestJson:
    def test_canonical_document(self):
        doc = io.graph_to_dict(path_graph(3))
        assert list(doc) == ["n", "edges", "labels"]
        assert doc["edges"] == [[0, 1], [1, 2]]
        assert doc["labels"]["0"] == {"kind": "plain", "name": 1}

    def test_labels_round_trip(self):
        g = tdelta_times_path(3, 3)
        back = io.from_json(io.to_json(g))
        assert back == g
        assert back.labels[0] == ProductPair(TDelta("a"), Plain(1))

    @given(graphs(max_n=10))
    def test_round_trip(self, g):
        assert io.from_json(io.to_json(g)) == g

    def test_malformed(self):
        with pytest.raises(InputError):
            io.from_json("{not json")
        with pytest.raises(InputError):
            io.from_json('{"edges": []}')
        with pytest.raises(InputError):
            io.label_from_json({"kind": "mystery"})

    def test_loads_detects_format(self):
        g = build_t_delta(3)
        assert io.loads(io.dumps(g, "json")) == g
        assert io.loads(io.dumps(g, "graph6")) == g.with_labels(None)
        with pytest.raises(InputError):
            io.dumps(g, "yaml")


def test_dot_export():
    text = io.to_dot(path_graph(2))
    assert text.startswith("graph G {")
    assert '0 [label="1"];' in text and "0 -- 1;" in text


class TestConstraintFiles:
    def test_coordinates_resolve(self):
        g = tdelta_times_path(3, 5)
        doc = {"allowed": [["b", 3], ["b", 4]], "required": [["b", 3]], "forbidden": [], "pairing": [[["a_1", 1], 0]]}
        c = io.constraint_from_dict(g, doc)
        b3 = g.vertex(ProductPair(TDelta("b"), Plain(3)))
        assert b3 in c.required and len(c.allowed) == 2
        assert c.pairing == ((g.vertex(ProductPair(TDelta("a_i", 1), Plain(1))), 0),)

    def test_round_trip(self):
        g = cartesian_product(path_graph(3), path_graph(4))
        c = EndpointConstraint.build(allowed=[4, 5, 6], required=[5], forbidden=[0], pairing=[(4, 6)])
        doc = json.loads(json.dumps(io.constraint_to_dict(g, c)))
        assert io.constraint_from_dict(g, doc) == c

    @pytest.mark.parametrize(
        "doc",
        [{"required": [99]}, {"required": [["x", 1]]}, {"colour": []}, {"required": [True]}, {"required": ["a"]}],
    )
    def test_rejects_bad_documents(self, doc):
        with pytest.raises(InputError):
            io.constraint_from_dict(cartesian_product(path_graph(3), path_graph(4)), doc)
