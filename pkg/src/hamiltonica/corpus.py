"""Small-graph corpora for exhaustive cross-checks.

Connected graphs up to isomorphism are grown one vertex at a time: every
connected graph has a vertex whose removal keeps it connected, so attaching
a new vertex to every non-empty subset of each smaller graph reaches all of
them.  Duplicates are removed with nauty certificates.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator

import pynauty

from .constructions import random_connected_graph
from .graph import Graph, InputError

CONNECTED_LIMIT = 9


def certificate(g: Graph) -> bytes:
    """Canonical certificate: equal iff the graphs are isomorphic (same order)."""
    ng = pynauty.Graph(g.n, adjacency_dict={v: list(g.adj[v]) for v in range(g.n)})
    return g.n.to_bytes(2, "big") + pynauty.certificate(ng)


def isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and certificate(g) == certificate(h)


@lru_cache(maxsize=None)
def _connected(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph(1),)
    seen: dict[bytes, Graph] = {}
    for base in _connected(n - 1):
        edges = base.edges()
        for mask in range(1, 1 << (n - 1)):
            g = Graph(n, edges + tuple((v, n - 1) for v in range(n - 1) if mask >> v & 1))
            seen.setdefault(certificate(g), g)
    return tuple(seen[k] for k in sorted(seen))


def connected_graphs(n: int) -> tuple[Graph, ...]:
    """One representative of every connected graph on ``n`` vertices (n <= 9; the 9-vertex run takes minutes)."""
    if not 1 <= n <= CONNECTED_LIMIT:
        raise InputError(f"connected graph enumeration needs 1 <= n <= {CONNECTED_LIMIT}")
    return _connected(n)


def connected_graphs_upto(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from connected_graphs(n)


def random_corpus(count: int, sizes: tuple[int, ...] = (9, 10), seed: int = 0) -> list[Graph]:
    """Seeded random connected graphs with sizes and densities spread evenly."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = sizes[i % len(sizes)]
        p = rng.choice((0.2, 0.3, 0.4, 0.5, 0.7))
        out.append(random_connected_graph(n, p, rng))
    return out
