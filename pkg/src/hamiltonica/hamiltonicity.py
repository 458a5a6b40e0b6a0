"""Exact Hamiltonian-cycle search with certificates.

The pruned engine decides every edge as *included* or *excluded* and keeps
the included edges as a set of vertex-disjoint path fragments.  After each
decision it closes the state under the degree rules (a vertex with two
available edges must use both; a vertex with two included edges drops the
rest; no fragment may close early) and then runs global cuts:

* biconnectivity of the graph of available edges,
* parity of the included edges entering each component left after removing
  saturated vertices,
* a capacity bound on separator hints: the separator can feed at most
  ``sum min(2 - used, free)`` cycle edges to the rest, and every component
  behind it needs two of them,
* pendant blocks: a vertex set K whose vertices each have at most one
  neighbour outside K meets any Hamiltonian cycle in a path cover of K with
  endpoints exactly where the outside edge is used; a frontier DP decides
  whether such a cover still exists under the current decisions (only
  blocks with a narrow frontier are used, so each DP call stays cheap).

The unpruned engine is a plain path-extension DFS from vertex 0.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

from .graph import (
    Graph,
    InputError,
    ProductPair,
    VertexSet,
    as_vertex_set,
    bipartition,
    connected_components,
    delete_vertices,
    induced_subgraph,
    is_connected,
)
from .factors import EndpointConstraint
from .frontier import count_path_covers_dp

DEFAULT_BUDGET = 10**9


class Outcome(Enum):
    FOUND = "found"
    NOT_HAMILTONIAN = "not_hamiltonian"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Pruning:
    """Switches for the pruned engine; ``Pruning.none()`` selects the naive DFS."""

    forced_edges: bool = True
    connectivity: bool = True
    separators: bool = True
    bipartite: bool = True

    @classmethod
    def none(cls) -> "Pruning":
        return cls(False, False, False, False)

    @property
    def naive(self) -> bool:
        return not (self.forced_edges or self.connectivity or self.separators)


@dataclass
class HamVerdict:
    outcome: Outcome
    cycle: Optional[tuple[int, ...]] = None
    nodes_explored: int = 0
    budget: int = DEFAULT_BUDGET
    reason: str = ""
    stats: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.outcome is Outcome.FOUND

    def to_json(self) -> dict:
        return {
            "verdict": self.outcome.value,
            "cycle": list(self.cycle) if self.cycle is not None else None,
            "nodes_explored": self.nodes_explored,
            "budget": self.budget,
        }


class _BudgetExceeded(Exception):
    pass


def verify_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    """True iff ``cycle`` lists every vertex once and consecutive vertices (cyclically) are adjacent."""
    n = g.n
    if n < 3 or len(cycle) != n or sorted(cycle) != list(range(n)):
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % n]) for i in range(n))


# ---------------------------------------------------------------------------
# separator hints
# ---------------------------------------------------------------------------


def product_separator_hints(g: Graph, max_size: int = 3, limit: int = 4) -> list[tuple[int, ...]]:
    """Fibre separators ``X x V(H)`` for small connected cut sets X of the left factor.

    Only meaningful when every vertex carries a :class:`ProductPair` label; the
    left factor is read back from the labels.  Sets X whose removal leaves at
    least three components are kept, strongest first.
    """
    if g.n == 0 or len(g.labels) != g.n or not all(isinstance(l, ProductPair) for l in g.labels.values()):
        return []
    lefts: dict = {}
    rights: dict = {}
    for v in range(g.n):
        lab = g.labels[v]
        lefts.setdefault(lab.left, []).append(v)
        rights.setdefault(lab.right, None)
    left_ids = {lab: i for i, lab in enumerate(lefts)}
    fibers = [lefts[lab] for lab in lefts]
    k = len(fibers)
    ladj: list[set[int]] = [set() for _ in range(k)]
    for u, v in g.edges():
        lu, lv = left_ids[g.labels[u].left], left_ids[g.labels[v].left]
        if lu != lv:
            ladj[lu].add(lv)
            ladj[lv].add(lu)
    factor = Graph(k, [(x, y) for x in range(k) for y in ladj[x] if x < y])

    found: set[frozenset[int]] = set()
    frontier = [frozenset([x]) for x in range(k)]
    for _ in range(max_size):
        nxt = []
        for xs in frontier:
            if xs in found:
                continue
            found.add(xs)
            for x in xs:
                for y in ladj[x]:
                    if y not in xs:
                        nxt.append(xs | {y})
        frontier = nxt
    scored = []
    for xs in found:
        rest, _ = delete_vertices(factor, xs)
        omega = len(connected_components(rest))
        if omega >= 3:
            scored.append((-omega, len(xs), sorted(xs)))
    scored.sort()
    hints = []
    for _, _, xs in scored[:limit]:
        hints.append(tuple(sorted(v for x in xs for v in fibers[x])))
    return hints


BLOCK_LIMIT = 32
# wider frontiers make the per-node DP cost outweigh the pruning
BLOCK_WIDTH = 4


def _product_fibres(g: Graph) -> Optional[tuple[list[list[int]], list[int]]]:
    """Fibres ``{x} x V(H)`` and the layer index of each vertex, read from labels."""
    if g.n == 0 or len(g.labels) != g.n or not all(isinstance(l, ProductPair) for l in g.labels.values()):
        return None
    lefts: dict = {}
    rights: dict = {}
    for v in range(g.n):
        lab = g.labels[v]
        lefts.setdefault(lab.left, []).append(v)
        rights.setdefault(lab.right, len(rights))
    layer = [rights[g.labels[v].right] for v in range(g.n)]
    return list(lefts.values()), layer


def _frontier_width(g: Graph, order: Sequence[int]) -> int:
    """Largest number of placed vertices that still have an unplaced neighbour in ``order``."""
    pos = {v: i for i, v in enumerate(order)}
    last = {v: max((pos[w] for w in g.adj[v] if w in pos), default=-1) for v in order}
    width = 0
    for i in range(len(order)):
        width = max(width, sum(1 for v in order[: i + 1] if last[v] > i))
    return width


def pendant_blocks(g: Graph, max_size: int = BLOCK_LIMIT, max_width: int = BLOCK_WIDTH) -> list[tuple[int, ...]]:
    """Vertex sets K in which every vertex has at most one neighbour outside K.

    A Hamiltonian cycle meets such a K in a path cover of K whose endpoints
    are exactly the vertices using their outside edge.  Candidates are the
    components of ``g`` minus one fibre of a product graph; those whose
    layer-by-layer frontier exceeds ``max_width`` are dropped.
    """
    info = _product_fibres(g)
    if info is None:
        return []
    fibres, layer = info
    found: set[tuple[int, ...]] = set()
    for fib in fibres:
        rest, index = delete_vertices(g, fib)
        back = {new: old for old, new in index.items()}
        for comp in connected_components(rest):
            block = tuple(sorted(back[v] for v in comp))
            if len(block) > max_size or len(block) == g.n:
                continue
            inside = set(block)
            if not all(sum(1 for w in g.adj[v] if w not in inside) <= 1 for v in block):
                continue
            sub, index = induced_subgraph(g, block)
            order = [index[v] for v in sorted(block, key=lambda v: (layer[v], v))]
            if _frontier_width(sub, order) <= max_width:
                found.add(block)
    return sorted(found)


class _Block:
    """A pendant block with a cache of endpoint patterns already decided."""

    def __init__(self, g: Graph, block: Sequence[int], layer: Optional[list[int]]):
        inside = set(block)
        self.vertices = tuple(block)
        self.outside = {}
        for v in block:
            out = [w for w in g.adj[v] if w not in inside]
            self.outside[v] = out[0] if out else None
        self.sub, self.index = induced_subgraph(g, block)
        key = (lambda v: (layer[v], v)) if layer is not None else (lambda v: v)
        self.order = [self.index[v] for v in sorted(block, key=key)]
        self.sub_edges = self.sub.edges()
        back = {new: old for old, new in self.index.items()}
        self.edges = [(back[a], back[b]) for a, b in self.sub_edges]
        self.cache: dict[tuple[int, int, int], bool] = {}

    def feasible(self, avail: list[set[int]], inc: list[list[int]]) -> bool:
        req = forb = 0
        for v, new in self.index.items():
            w = self.outside[v]
            if w is None or w not in avail[v]:
                forb |= 1 << new
            elif w in inc[v]:
                req |= 1 << new
        gone = 0
        for bit, (u, v) in enumerate(self.edges):
            if v not in avail[u]:
                gone |= 1 << bit
        key = (req, forb, gone)
        ok = self.cache.get(key)
        if ok is None:
            sub = self.sub
            if gone:
                sub = Graph(sub.n, [e for bit, e in enumerate(self.sub_edges) if not gone >> bit & 1])
            c = EndpointConstraint(None, VertexSet(req), VertexSet(forb))
            ok = count_path_covers_dp(sub, c, self.order) > 0
            self.cache[key] = ok
        return ok


# ---------------------------------------------------------------------------
# edge-state engine
# ---------------------------------------------------------------------------


class _EdgeState:
    """Mutable include/exclude state with an undo trail."""

    def __init__(self, g: Graph):
        n = g.n
        self.n = n
        self.avail: list[set[int]] = [set(g.adj[v]) for v in range(n)]
        self.inc: list[list[int]] = [[] for _ in range(n)]
        self.end = list(range(n))
        self.size = [1] * n
        self.trail: list[tuple] = []
        self.queue: list[int] = []
        self.closed = False
        self.n_included = 0

    # -- primitive moves -------------------------------------------------

    def exclude(self, u: int, v: int) -> bool:
        if v in self.inc[u]:
            return False
        if v not in self.avail[u]:
            return True
        self.avail[u].discard(v)
        self.avail[v].discard(u)
        self.trail.append(("x", u, v))
        self.queue.append(u)
        self.queue.append(v)
        return True

    def include(self, u: int, v: int) -> bool:
        inc = self.inc
        if v in inc[u]:
            return True
        if v not in self.avail[u] or len(inc[u]) >= 2 or len(inc[v]) >= 2:
            return False
        end, size = self.end, self.size
        a, b = end[u], end[v]
        if a == v:
            # u and v are the two ends of one fragment
            if size[u] != self.n:
                return False
            inc[u].append(v)
            inc[v].append(u)
            self.n_included += 1
            self.closed = True
            self.trail.append(("c", u, v))
            return True
        inc[u].append(v)
        inc[v].append(u)
        self.n_included += 1
        self.trail.append(("i", u, v, a, b, end[a], end[b], size[a], size[b]))
        total = size[a] + size[b]
        end[a], end[b] = b, a
        size[a] = size[b] = total
        self.queue.append(u)
        self.queue.append(v)
        if total < self.n and b in self.avail[a] and b not in inc[a]:
            return self.exclude(a, b)
        return True

    def undo(self, mark: int) -> None:
        trail = self.trail
        while len(trail) > mark:
            rec = trail.pop()
            kind = rec[0]
            if kind == "x":
                _, u, v = rec
                self.avail[u].add(v)
                self.avail[v].add(u)
            elif kind == "i":
                _, u, v, a, b, ea, eb, sa, sb = rec
                self.inc[u].pop()
                self.inc[v].pop()
                self.n_included -= 1
                self.end[a], self.end[b] = ea, eb
                self.size[a], self.size[b] = sa, sb
            else:
                _, u, v = rec
                self.inc[u].pop()
                self.inc[v].pop()
                self.n_included -= 1
                self.closed = False
        self.queue.clear()

    def propagate(self) -> bool:
        avail, inc, queue = self.avail, self.inc, self.queue
        while queue:
            v = queue.pop()
            av = avail[v]
            if len(av) < 2:
                return False
            iv = inc[v]
            if len(iv) == 2:
                if len(av) > 2:
                    for w in [w for w in av if w not in iv]:
                        if not self.exclude(v, w):
                            return False
            elif len(av) == 2:
                for w in list(av):
                    if w not in iv and not self.include(v, w):
                        return False
        return True

    def cycle(self) -> tuple[int, ...]:
        out = [0]
        prev, cur = -1, 0
        for _ in range(self.n - 1):
            a, b = self.inc[cur]
            nxt = a if a != prev else b
            prev, cur = cur, nxt
            out.append(cur)
        return tuple(out)


def _biconnected(avail: list[set[int]], n: int) -> bool:
    """Connected and free of articulation points (iterative Tarjan)."""
    disc = [-1] * n
    low = [0] * n
    disc[0] = low[0] = 0
    t = 1
    root_children = 0
    stack = [(0, -1, iter(avail[0]))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] < 0:
                disc[w] = low[w] = t
                t += 1
                stack.append((w, v, iter(avail[w])))
                advanced = True
                break
            if w != parent and disc[w] < low[v]:
                low[v] = disc[w]
        if advanced:
            continue
        stack.pop()
        if parent >= 0:
            if low[v] < low[parent]:
                low[parent] = low[v]
            if parent == 0:
                root_children += 1
            elif low[v] >= disc[parent]:
                return False
    return t == n and root_children <= 1


def _components_outside(avail: list[set[int]], n: int, blocked: list[bool]) -> list[list[int]]:
    seen = list(blocked)
    comps = []
    for r in range(n):
        if seen[r]:
            continue
        seen[r] = True
        comp = [r]
        for v in comp:
            for w in avail[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
        comps.append(comp)
    return comps


class _Search:
    def __init__(
        self,
        g: Graph,
        budget: int,
        pruning: Pruning,
        hints: Sequence[Sequence[int]],
        blocks: Sequence[Sequence[int]] = (),
    ):
        self.g = g
        self.n = g.n
        self.budget = budget
        self.pruning = pruning
        self.hints = []
        for h in hints:
            mask = [False] * g.n
            for v in h:
                mask[v] = True
            self.hints.append((tuple(h), mask))
        self.nodes = 0
        first = [v for h, _ in self.hints[:1] for v in h]
        seen = set(first)
        self.order = first + [v for v in range(g.n) if v not in seen]
        self.state = _EdgeState(g)
        self.cuts = {"connectivity": 0, "parity": 0, "separator": 0, "blocks": 0}
        info = _product_fibres(g)
        layer = info[1] if info is not None else None
        self.blocks = [_Block(g, b, layer) for b in blocks]

    # -- global cuts -----------------------------------------------------

    def _saturation_parity(self) -> bool:
        st = self.state
        saturated = [len(st.inc[v]) == 2 for v in range(self.n)]
        if not any(saturated):
            return True
        for comp in _components_outside(st.avail, self.n, saturated):
            crossing = 0
            for v in comp:
                for w in st.inc[v]:
                    if saturated[w]:
                        crossing += 1
            if crossing < 2 or crossing % 2:
                return False
        return True

    def _separator_capacity(self) -> bool:
        st = self.state
        avail, inc = st.avail, st.inc
        for hint, inside in self.hints:
            capacity = 0
            for s in hint:
                used = sum(1 for w in inc[s] if inside[w])
                free = sum(1 for w in avail[s] if not inside[w])
                capacity += min(2 - used, free)
            comps = _components_outside(avail, self.n, inside)
            if 2 * len(comps) > capacity:
                return False
            for comp in comps:
                boundary = 0
                decided = 0
                for v in comp:
                    for w in avail[v]:
                        if inside[w]:
                            boundary += 1
                            if w in inc[v]:
                                decided += 1
                if boundary < 2 or (boundary == decided and boundary % 2):
                    return False
        return True

    def consistent(self) -> bool:
        st = self.state
        if not st.propagate():
            return False
        if st.closed:
            return True
        p = self.pruning
        if p.connectivity:
            if not _biconnected(st.avail, self.n):
                self.cuts["connectivity"] += 1
                return False
            if not self._saturation_parity():
                self.cuts["parity"] += 1
                return False
        if p.separators and self.hints and not self._separator_capacity():
            self.cuts["separator"] += 1
            return False
        if p.separators and self.blocks:
            for b in self.blocks:
                if not b.feasible(st.avail, st.inc):
                    self.cuts["blocks"] += 1
                    return False
        return True

    # -- search ----------------------------------------------------------

    def _pick(self) -> int:
        st = self.state
        best, best_score = -1, None
        for v in self.order:
            k = len(st.inc[v])
            if k == 1:
                score = len(st.avail[v])
                if best_score is None or score < best_score:
                    best, best_score = v, score
                    if score == 3:
                        break
        if best >= 0:
            return best
        for v in range(self.n):
            if len(st.inc[v]) < 2:
                return v
        return -1

    def run(self) -> Optional[tuple[int, ...]]:
        st = self.state
        if self.pruning.forced_edges:
            for v in range(self.n):
                st.queue.append(v)
        if not self.consistent():
            return None
        return self._dfs()

    def _dfs(self) -> Optional[tuple[int, ...]]:
        st = self.state
        if st.closed:
            return st.cycle()
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExceeded
        v = self._pick()
        if v < 0:
            return None
        while True:
            if st.closed:
                return st.cycle()
            if len(st.inc[v]) == 2:
                return self._dfs()
            w = min(w for w in st.avail[v] if w not in st.inc[v])
            mark = len(st.trail)
            if st.include(v, w) and self.consistent():
                found = self._dfs()
                if found is not None:
                    return found
            st.undo(mark)
            # the caller's undo mark also covers this exclusion
            if not (st.exclude(v, w) and self.consistent()):
                return None


# ---------------------------------------------------------------------------
# naive engine
# ---------------------------------------------------------------------------


def _naive_search(g: Graph, budget: int) -> tuple[Optional[tuple[int, ...]], int]:
    n = g.n
    nbrs = [g.neighbors(v) for v in range(n)]
    path = [0]
    visited = [False] * n
    visited[0] = True
    nodes = 0

    def extend() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExceeded
        v = path[-1]
        if len(path) == n:
            return g.has_edge(v, 0)
        for w in nbrs[v]:
            if not visited[w]:
                visited[w] = True
                path.append(w)
                if extend():
                    return True
                path.pop()
                visited[w] = False
        return False

    return (tuple(path) if extend() else None), nodes


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------


def find_hamiltonian_cycle(
    g: Graph,
    budget: int = DEFAULT_BUDGET,
    pruning: Pruning = Pruning(),
    hints: Optional[Iterable[Iterable[int]]] = None,
) -> HamVerdict:
    """Decide Hamiltonicity of ``g``.

    ``budget`` bounds search nodes; running out yields ``Outcome.UNKNOWN``.
    ``hints`` are vertex sets used by the separator-capacity cut; for product
    graphs they default to :func:`product_separator_hints`.
    """
    n = g.n
    if n < 3:
        raise InputError("Hamiltonicity needs at least 3 vertices")
    limit = max(sys.getrecursionlimit(), 4 * n + 1000)
    sys.setrecursionlimit(limit)

    def no(reason: str, nodes: int = 0, **stats) -> HamVerdict:
        return HamVerdict(Outcome.NOT_HAMILTONIAN, None, nodes, budget, reason, stats)

    if pruning.naive:
        if n > 1 and any(not g.adj[v] for v in range(n)):
            return no("isolated vertex")
        try:
            cycle, nodes = _naive_search(g, budget)
        except _BudgetExceeded:
            return HamVerdict(Outcome.UNKNOWN, None, budget, budget, "budget exhausted")
        if cycle is None:
            return no("exhausted", nodes)
        assert verify_cycle(g, cycle)
        return HamVerdict(Outcome.FOUND, cycle, nodes, budget, "")

    if min(g.degree(v) for v in range(n)) < 2:
        return no("vertex of degree < 2")
    if not is_connected(g):
        return no("disconnected")
    if pruning.bipartite:
        bp = bipartition(g)
        if bp.is_bipartite and not bp.balanced:
            return no("unbalanced bipartition", sizes=bp.sizes)
    if hints is None:
        hint_list = product_separator_hints(g) if pruning.separators else []
    else:
        hint_list = [tuple(as_vertex_set(g, h)) for h in hints]
    blocks = pendant_blocks(g) if pruning.separators else []
    search = _Search(g, budget, pruning, hint_list, blocks)
    try:
        cycle = search.run()
    except _BudgetExceeded:
        return HamVerdict(Outcome.UNKNOWN, None, search.nodes - 1, budget, "budget exhausted", dict(search.cuts))
    stats = dict(search.cuts)
    if cycle is None:
        return no("exhausted", search.nodes, **stats)
    if not verify_cycle(g, cycle):
        raise AssertionError("solver produced an invalid cycle")
    return HamVerdict(Outcome.FOUND, cycle, search.nodes, budget, "", stats)


def is_hamiltonian(g: Graph, budget: int = DEFAULT_BUDGET) -> bool:
    v = find_hamiltonian_cycle(g, budget)
    if v.outcome is Outcome.UNKNOWN:
        raise RuntimeError("Hamiltonicity undecided within budget")
    return v.found


# ---------------------------------------------------------------------------
# forced edges and cut profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ForcedEdges:
    included: frozenset[tuple[int, int]]
    excluded: frozenset[tuple[int, int]]
    infeasible: bool


def forced_edges(g: Graph) -> ForcedEdges:
    """Fixed point of the degree rules starting from no decisions.

    ``infeasible`` flags a vertex of degree < 2, three forced edges at one
    vertex, or a forced cycle shorter than ``n``.
    """
    st = _EdgeState(g)
    st.queue.extend(range(g.n))
    ok = st.propagate()
    if g.n < 3:
        ok = False
    inc = {(u, v) for u in range(g.n) for v in st.inc[u] if u < v}
    # propagation may stop at a contradiction before reaching every degree-2 vertex
    inc |= {(min(u, w), max(u, w)) for u in range(g.n) if g.degree(u) == 2 for w in g.adj[u]}
    inc = frozenset(inc)
    exc = frozenset((u, v) for u, v in g.edges() if v not in st.avail[u])
    return ForcedEdges(inc, exc, not ok)


@dataclass(frozen=True)
class CutProfile:
    cut_set: VertexSet
    crossing_edges: int
    components_outside: int
    components_touched: int


def cut_profile(g: Graph, cycle: Sequence[int], cut) -> CutProfile:
    """How a Hamiltonian cycle crosses between ``cut`` and the components of ``g - cut``."""
    if not verify_cycle(g, cycle):
        raise InputError("cut_profile needs a valid Hamiltonian cycle")
    cut = as_vertex_set(g, cut)
    rest, index = delete_vertices(g, cut)
    back = {new: old for old, new in index.items()}
    comps = connected_components(rest)
    comp_of = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[back[v]] = ci
    n = len(cycle)
    crossing = 0
    touched = set()
    for i in range(n):
        u, v = cycle[i], cycle[(i + 1) % n]
        if (u in cut) != (v in cut):
            crossing += 1
            outside = v if u in cut else u
            touched.add(comp_of[outside])
    return CutProfile(cut, crossing, len(comps), len(touched))
