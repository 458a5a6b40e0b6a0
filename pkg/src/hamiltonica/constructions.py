"""Graph generators: standard families, the tree T_Delta, Cartesian products,
non-isomorphic trees and the named subpaths of T_Delta x P_m."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .graph import (
    Graph,
    InputError,
    Plain,
    ProductPair,
    TDelta,
    VertexLabel,
    is_tree,
)


def path_graph(n: int) -> Graph:
    if n < 1:
        raise InputError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)], {i: Plain(i + 1) for i in range(n)})


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], {i: Plain(i + 1) for i in range(n)})


def star(k: int) -> Graph:
    """K_{1,k}; the centre is vertex 0."""
    if k < 1:
        raise InputError("star needs k >= 1 leaves")
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(p: int, q: int) -> Graph:
    return Graph(p + q, [(i, p + j) for i in range(p) for j in range(q)])


def double_star(k: int = 2) -> Graph:
    """Two adjacent centres each carrying ``k`` leaves (6 vertices for k=2)."""
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(k)]
    edges += [(1, 2 + k + i) for i in range(k)]
    return Graph(2 * k + 2, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


# ---------------------------------------------------------------------------
# T_Delta
# ---------------------------------------------------------------------------


def tdelta_index(delta: int, label: TDelta) -> int:
    """Vertex number of a T_Delta role: a=0, b=1, c=2, then a_i, c_i, leaves."""
    fixed = {"a": 0, "b": 1, "c": 2}
    if label.role in fixed:
        return fixed[label.role]
    i = label.index
    if i is None or not 1 <= i <= delta - 1:
        raise InputError(f"index of {label} outside 1..{delta - 1}")
    if label.role == "a_i":
        return 2 + i
    if label.role == "c_i":
        return delta + 1 + i
    leaf = ("u_i", "v_i", "y_i", "z_i").index(label.role)
    return 2 * delta + 1 + 4 * (i - 1) + leaf


def build_t_delta(delta: int) -> Graph:
    if delta < 3:
        raise InputError("T_Delta needs Delta >= 3")
    labels: dict[int, VertexLabel] = {}
    for role in ("a", "b", "c"):
        labels[tdelta_index(delta, TDelta(role))] = TDelta(role)
    for i in range(1, delta):
        for role in ("a_i", "c_i", "u_i", "v_i", "y_i", "z_i"):
            lab = TDelta(role, i)
            labels[tdelta_index(delta, lab)] = lab
    idx = {lab: v for v, lab in labels.items()}
    edges = [(idx[TDelta("a")], idx[TDelta("b")]), (idx[TDelta("b")], idx[TDelta("c")])]
    for i in range(1, delta):
        ai, ci = idx[TDelta("a_i", i)], idx[TDelta("c_i", i)]
        edges += [(idx[TDelta("a")], ai), (idx[TDelta("c")], ci)]
        edges += [(ai, idx[TDelta("u_i", i)]), (ai, idx[TDelta("v_i", i)])]
        edges += [(ci, idx[TDelta("y_i", i)]), (ci, idx[TDelta("z_i", i)])]
    return Graph(6 * delta - 3, edges, labels)


def tdelta_path_factor(delta: int) -> list[list[int]]:
    """The bold path factor of T_Delta: B=a,b,c and A_i=u_i,a_i,v_i, C_i=y_i,c_i,z_i."""
    ix = lambda role, i=None: tdelta_index(delta, TDelta(role, i))  # noqa: E731
    paths = [[ix("a"), ix("b"), ix("c")]]
    paths += [[ix("u_i", i), ix("a_i", i), ix("v_i", i)] for i in range(1, delta)]
    paths += [[ix("y_i", i), ix("c_i", i), ix("z_i", i)] for i in range(1, delta)]
    return paths


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G x H with vertex (x, y) numbered ``x * |V(H)| + y``."""
    if g.n == 0 or h.n == 0:
        raise InputError("product factors must be nonempty")
    k = h.n
    edges = []
    for x, xx in g.edges():
        for y in range(k):
            edges.append((x * k + y, xx * k + y))
    for y, yy in h.edges():
        for x in range(g.n):
            edges.append((x * k + y, x * k + yy))
    labels = {}
    for x in range(g.n):
        lx = g.labels.get(x, Plain(x))
        for y in range(k):
            labels[x * k + y] = ProductPair(lx, h.labels.get(y, Plain(y)))
    return Graph(g.n * k, edges, labels)


def product_index(h_order: int, x: int, y: int) -> int:
    return x * h_order + y


def product_pair(t: str, layer: int) -> ProductPair:
    """Label ``(t, layer)`` in T_Delta x P_m, e.g. ``product_pair("a_2", 3)``."""
    from .graph import tdelta

    return ProductPair(tdelta(t), Plain(layer))


def tdelta_times_path(delta: int, m: int) -> Graph:
    return cartesian_product(build_t_delta(delta), path_graph(m))


def fiber(g_order: int, h_order: int, x: int) -> list[int]:
    """Vertices ``{x} x V(H)`` of a product."""
    return [x * h_order + y for y in range(h_order)]


# ---------------------------------------------------------------------------
# trees
# ---------------------------------------------------------------------------


def tree_centers(g: Graph) -> list[int]:
    if g.n <= 2:
        return list(range(g.n))
    degree = [g.degree(v) for v in range(g.n)]
    layer = [v for v in range(g.n) if degree[v] <= 1]
    remaining = g.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in g.adj[v]:
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _ahu(g: Graph, root: int) -> str:
    """AHU encoding of ``g`` rooted at ``root`` (iterative post-order)."""
    parent = {root: -1}
    order = [root]
    for v in order:
        for w in g.adj[v]:
            if w != parent[v]:
                parent[w] = v
                order.append(w)
    codes: dict[int, str] = {}
    for v in reversed(order):
        kids = sorted(codes[w] for w in g.adj[v] if w != parent[v])
        codes[v] = "(" + "".join(kids) + ")"
    return codes[root]


def tree_canonical_form(g: Graph) -> str:
    """Minimum AHU string over the tree's centres; equal iff isomorphic."""
    if not is_tree(g):
        raise InputError("canonical form is defined for trees only")
    return min(_ahu(g, c) for c in tree_centers(g))


def all_trees(n: int) -> Iterator[Graph]:
    """One tree per isomorphism class on ``n`` vertices (1 <= n <= 10).

    Trees on n vertices are grown by attaching a leaf to every vertex of each
    tree on n-1 vertices and deduplicated by :func:`tree_canonical_form`.
    """
    if not 1 <= n <= 10:
        raise InputError("all_trees supports 1 <= n <= 10")
    level = [Graph(1)]
    for size in range(2, n + 1):
        seen: dict[str, Graph] = {}
        for t in level:
            for v in range(t.n):
                grown = Graph(size, list(t.edges()) + [(v, size - 1)])
                seen.setdefault(tree_canonical_form(grown), grown)
        level = [seen[k] for k in sorted(seen)]
    yield from level


def prufer_to_tree(seq: tuple[int, ...], n: int) -> Graph:
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = [v for v in range(n) if degree[v] == 1]
    edges.append((u, w))
    return Graph(n, edges)


def trees_by_prufer(n: int) -> list[Graph]:
    """Isomorphism classes of trees via all n^(n-2) Pruefer codes (slow; n <= 8)."""
    if n <= 2:
        return [path_graph(n).with_labels(None)]
    seen: dict[str, Graph] = {}
    for seq in itertools.product(range(n), repeat=n - 2):
        t = prufer_to_tree(seq, n)
        seen.setdefault(tree_canonical_form(t), t)
    return [seen[k] for k in sorted(seen)]


def random_tree(n: int, rng: random.Random) -> Graph:
    if n <= 2:
        return path_graph(n).with_labels(None)
    return prufer_to_tree(tuple(rng.randrange(n) for _ in range(n - 2)), n)


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """Random spanning tree plus each remaining pair independently with probability p."""
    base = random_tree(n, rng)
    edges = set(base.edges())
    for u, v in itertools.combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < p:
            edges.add((u, v))
    return Graph(n, sorted(edges))


# ---------------------------------------------------------------------------
# named subpaths of T_Delta x P_m
# ---------------------------------------------------------------------------

FIXTURE_NAMES = ("M", "N", "Q", "R", "S", "T", "U", "V", "X", "Z")
_BRANCHED = {"Q", "R", "U", "V"}


@dataclass(frozen=True)
class PathFixture:
    name: str
    i: int
    j: Optional[int]
    vertices: tuple[ProductPair, ...]

    @property
    def title(self) -> str:
        return f"{self.name}_{self.i}" if self.j is None else f"{self.name}_{self.i},{self.j}"


def _fixture_shape(name: str, i: int, j: Optional[int]) -> list[tuple[str, int]]:
    cj, aj = f"c_{j}", f"a_{j}"
    shapes = {
        "M": [("a", i), ("a", i + 1), ("b", i + 1), ("b", i + 2), ("a", i + 2), ("a", i + 3)],
        "N": [("c", i), ("c", i + 1), ("c", i + 2), ("c", i + 3)],
        "Q": [("c", i), ("c", i + 1), (cj, i + 1)],
        "R": [(cj, i + 2), ("c", i + 2), ("c", i + 3)],
        "S": [("c", i), ("c", i + 1), ("b", i + 1), ("b", i + 2), ("c", i + 2), ("c", i + 3)],
        "T": [("a", i), ("a", i + 1), ("a", i + 2), ("a", i + 3)],
        "U": [("a", i), ("a", i + 1), (aj, i + 1)],
        "V": [(aj, i + 2), ("a", i + 2), ("a", i + 3)],
        "X": [("a", i), ("a", i + 1), ("b", i + 1), ("c", i + 1), ("c", i)],
        "Z": [("a", i + 3), ("a", i + 2), ("b", i + 2), ("c", i + 2), ("c", i + 3)],
    }
    return shapes[name]


def fixture_path(name: str, i: int, j: Optional[int] = None) -> PathFixture:
    if name not in FIXTURE_NAMES:
        raise InputError(f"unknown fixture {name!r}")
    if (name in _BRANCHED) != (j is not None):
        raise InputError(f"fixture {name} {'needs' if name in _BRANCHED else 'takes no'} branch index")
    verts = tuple(product_pair(t, layer) for t, layer in _fixture_shape(name, i, j))
    return PathFixture(name, i, j, verts)


def fixture_paths(delta: int, m: int) -> list[PathFixture]:
    """All ten named paths for every i in [m-3] and (where used) j in [Delta-1]."""
    if delta < 3 or m < 4:
        raise InputError("fixtures need Delta >= 3 and m >= 4")
    out = []
    for name in FIXTURE_NAMES:
        for i in range(1, m - 2):
            if name in _BRANCHED:
                out.extend(fixture_path(name, i, j) for j in range(1, delta))
            else:
                out.append(fixture_path(name, i))
    return out


def resolve_fixture(g: Graph, fixture: PathFixture) -> list[int]:
    return [g.vertex(lab) for lab in fixture.vertices]
