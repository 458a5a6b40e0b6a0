"""Simple undirected graphs on dense integer vertices.

Vertices are ``0..n-1``. Structured names (tree roles, product coordinates)
live in a label sidecar so the solvers never look at them.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping, Optional, Union


class InputError(ValueError):
    """Raised when an operation receives arguments outside its contract."""


# ---------------------------------------------------------------------------
# labels
# ---------------------------------------------------------------------------

TDELTA_ROLES = ("a", "b", "c")
TDELTA_INDEXED_ROLES = ("a_i", "c_i", "u_i", "v_i", "y_i", "z_i")


@dataclass(frozen=True)
class Plain:
    name: Union[int, str]

    def __str__(self) -> str:
        return str(self.name)


@dataclass(frozen=True)
class TDelta:
    """Role of a vertex of the tree T_Delta; indexed roles carry ``index >= 1``."""

    role: str
    index: Optional[int] = None

    def __post_init__(self):
        if self.role in TDELTA_ROLES:
            if self.index is not None:
                raise InputError(f"role {self.role!r} takes no index")
        elif self.role in TDELTA_INDEXED_ROLES:
            if self.index is None or self.index < 1:
                raise InputError(f"role {self.role!r} needs an index >= 1")
        else:
            raise InputError(f"unknown T_Delta role {self.role!r}")

    def __str__(self) -> str:
        if self.index is None:
            return self.role
        return f"{self.role[0]}_{self.index}"


@dataclass(frozen=True)
class ProductPair:
    left: "VertexLabel"
    right: "VertexLabel"

    def __str__(self) -> str:
        return f"({self.left},{self.right})"


VertexLabel = Union[Plain, TDelta, ProductPair]


def tdelta(name: str) -> TDelta:
    """Parse a short role name: ``"a"``, ``"b"``, ``"a_3"``, ``"z_1"``."""
    if name in TDELTA_ROLES:
        return TDelta(name)
    head, sep, idx = name.partition("_")
    if not sep or not idx.isdigit():
        raise InputError(f"cannot parse T_Delta label {name!r}")
    return TDelta(f"{head}_i", int(idx))


# ---------------------------------------------------------------------------
# vertex sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VertexSet:
    """Immutable membership bitset over ``0..n-1``."""

    mask: int = 0

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "VertexSet":
        mask = 0
        for v in vertices:
            if v < 0:
                raise InputError(f"negative vertex {v}")
            mask |= 1 << v
        return cls(mask)

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.mask >> v & 1)

    def __bool__(self) -> bool:
        return self.mask != 0

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask | other.mask)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask & other.mask)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.mask & ~other.mask)

    def issubset(self, other: "VertexSet") -> bool:
        return self.mask & ~other.mask == 0

    def min(self) -> int:
        if not self.mask:
            raise ValueError("empty vertex set")
        return (self.mask & -self.mask).bit_length() - 1

    def to_list(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return f"VertexSet({self.to_list()})"


def popcount(mask: int) -> int:
    return mask.bit_count()


# ---------------------------------------------------------------------------
# graph
# ---------------------------------------------------------------------------


class Graph:
    """Immutable simple undirected graph.

    ``adj[v]`` is a frozenset of neighbours; ``neighbors(v)`` gives them sorted.
    ``labels`` maps vertices to :data:`VertexLabel` values and may be partial.
    """

    __slots__ = ("n", "adj", "labels", "_sorted", "_edges", "_by_label")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Optional[Mapping[int, VertexLabel]] = None,
    ):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at {u}")
            sets[u].add(v)
            sets[v].add(u)
        self.n = n
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in sets)
        self._sorted = tuple(tuple(sorted(s)) for s in sets)
        lab = dict(labels or {})
        for v in lab:
            if not 0 <= v < n:
                raise InputError(f"label on missing vertex {v}")
        self.labels: Mapping[int, VertexLabel] = lab
        self._edges: Optional[tuple[tuple[int, int], ...]] = None
        self._by_label: Optional[dict] = None

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._sorted[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        if self._edges is None:
            self._edges = tuple((u, v) for u in range(self.n) for v in self._sorted[u] if u < v)
        return self._edges

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def max_degree(self) -> int:
        return max((len(s) for s in self.adj), default=0)

    def label(self, v: int) -> Optional[VertexLabel]:
        return self.labels.get(v)

    def name(self, v: int) -> str:
        lab = self.labels.get(v)
        return str(v) if lab is None else str(lab)

    def vertex(self, label: VertexLabel) -> int:
        """Inverse of the label map; raises ``KeyError`` for unknown labels."""
        if self._by_label is None:
            self._by_label = {lab: v for v, lab in self.labels.items()}
        return self._by_label[label]

    def with_labels(self, labels: Optional[Mapping[int, VertexLabel]]) -> "Graph":
        return Graph(self.n, self.edges(), labels)

    def without_edges(self, removed: Iterable[tuple[int, int]]) -> "Graph":
        drop = {(min(u, v), max(u, v)) for u, v in removed}
        return Graph(self.n, [e for e in self.edges() if e not in drop], self.labels)

    def with_edges(self, added: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, list(self.edges()) + list(added), self.labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj and dict(self.labels) == dict(other.labels)

    def __hash__(self) -> int:
        return hash((self.n, self.edges()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def as_vertex_set(g: Graph, s: Union[VertexSet, Iterable[int]]) -> VertexSet:
    vs = s if isinstance(s, VertexSet) else VertexSet.of(s)
    if vs.mask >> g.n:
        raise InputError(f"vertex set {vs.to_list()} not inside 0..{g.n - 1}")
    return vs


def delete_vertices(g: Graph, s: Union[VertexSet, Iterable[int]]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``V(g) - s`` plus the old-to-new index map."""
    s = as_vertex_set(g, s)
    keep = [v for v in range(g.n) if v not in s]
    index = {old: new for new, old in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in g.edges() if u in index and v in index]
    labels = {index[v]: lab for v, lab in g.labels.items() if v in index}
    return Graph(len(keep), edges, labels), index


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    vs = as_vertex_set(g, vertices)
    return delete_vertices(g, VertexSet(((1 << g.n) - 1) & ~vs.mask))


def connected_components(g: Graph) -> list[VertexSet]:
    seen = [False] * g.n
    parts = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [root]
        mask = 0
        while stack:
            v = stack.pop()
            mask |= 1 << v
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        parts.append(VertexSet(mask))
    return parts


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def isolated_count(g: Graph) -> int:
    return sum(1 for s in g.adj if not s)


def degree_sequence(g: Graph) -> list[int]:
    return sorted((len(s) for s in g.adj), reverse=True)


class BipartiteKind(Enum):
    BALANCED = "balanced"
    UNBALANCED = "unbalanced"
    NOT_BIPARTITE = "not_bipartite"


@dataclass(frozen=True)
class Bipartition:
    kind: BipartiteKind
    sizes: Optional[tuple[int, int]] = None
    coloring: Optional[tuple[int, ...]] = None

    @property
    def is_bipartite(self) -> bool:
        return self.kind is not BipartiteKind.NOT_BIPARTITE

    @property
    def balanced(self) -> bool:
        return self.kind is BipartiteKind.BALANCED


def two_coloring(g: Graph) -> Optional[list[int]]:
    """BFS 2-colouring, each component rooted at its smallest vertex with colour 0."""
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = [root]
        for v in queue:
            for w in g.adj[v]:
                if color[w] < 0:
                    color[w] = color[v] ^ 1
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def bipartition(g: Graph) -> Bipartition:
    """Classify ``g`` as balanced / unbalanced bipartite or not bipartite.

    Disconnected graphs: every component may flip its colouring; the flips are
    chosen to minimise the difference of the two part sizes, and the sizes are
    reported smaller part first.
    """
    color = two_coloring(g)
    if color is None:
        return Bipartition(BipartiteKind.NOT_BIPARTITE)
    comps = connected_components(g)
    # subset-sum over per-component flips: reachable sizes of colour class 0
    reachable = {0: ()}
    for comp in comps:
        zeros = sum(1 for v in comp if color[v] == 0)
        ones = len(comp) - zeros
        nxt: dict[int, tuple] = {}
        for total, flips in reachable.items():
            for add, flip in ((zeros, 0), (ones, 1)):
                nxt.setdefault(total + add, flips + (flip,))
        reachable = nxt
    best = min(reachable, key=lambda x: (abs(g.n - 2 * x), x))
    flips = reachable[best]
    final = list(color)
    for comp, flip in zip(comps, flips):
        if flip:
            for v in comp:
                final[v] ^= 1
    small, large = sorted((best, g.n - best))
    kind = BipartiteKind.BALANCED if small == large else BipartiteKind.UNBALANCED
    return Bipartition(kind, (small, large), tuple(final))
