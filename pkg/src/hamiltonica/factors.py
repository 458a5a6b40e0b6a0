"""Path factors and path covers under endpoint constraints, with separator witnesses.

A *path cover* here is a spanning set of vertex-disjoint paths, each with at
least two vertices (equivalently: a spanning acyclic subgraph in which every
vertex has degree 1 or 2).  Its endpoint set is the set of degree-1 vertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .graph import Graph, InputError, VertexSet, as_vertex_set, delete_vertices, connected_components


class SearchBudgetExceeded(RuntimeError):
    """An exhaustive search hit its node budget; the answer is unknown."""


@dataclass(frozen=True)
class PathSystem:
    paths: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, paths: Iterable[Sequence[int]]) -> "PathSystem":
        return cls(tuple(tuple(p) for p in paths))

    @property
    def covered(self) -> VertexSet:
        return VertexSet.of(v for p in self.paths for v in p)

    @property
    def endpoints(self) -> VertexSet:
        return VertexSet.of(v for p in self.paths for v in (p[0], p[-1]))

    def canonical(self) -> "PathSystem":
        """Each path read from its smaller end, paths sorted; equal systems compare equal."""
        norm = [p if p[0] <= p[-1] else p[::-1] for p in self.paths]
        return PathSystem(tuple(sorted(norm)))


def path_system_errors(g: Graph, ps: PathSystem) -> list[str]:
    errors = []
    seen: set[int] = set()
    for p in ps.paths:
        if len(p) < 2:
            errors.append(f"path {list(p)} has fewer than two vertices")
        for v in p:
            if not 0 <= v < g.n:
                errors.append(f"vertex {v} out of range")
                return errors
            if v in seen:
                errors.append(f"vertex {v} used twice")
            seen.add(v)
        for u, v in zip(p, p[1:]):
            if not g.has_edge(u, v):
                errors.append(f"{u}-{v} is not an edge")
    return errors


def is_path_factor(g: Graph, ps: PathSystem) -> bool:
    return not path_system_errors(g, ps) and len(ps.covered) == g.n


# ---------------------------------------------------------------------------
# endpoint constraints
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EndpointConstraint:
    """Restrictions on the endpoint set E of a cover.

    ``allowed=None`` means every vertex may be an endpoint.  Each pair
    ``(u, v)`` in ``pairing`` demands ``u in E <=> v in E``.
    """

    allowed: Optional[VertexSet] = None
    required: VertexSet = VertexSet()
    forbidden: VertexSet = VertexSet()
    pairing: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.allowed is not None and not self.required.issubset(self.allowed):
            raise InputError("required endpoints must be allowed")
        if self.required & self.forbidden:
            raise InputError("a vertex cannot be both required and forbidden")

    @classmethod
    def build(cls, allowed=None, required=(), forbidden=(), pairing=()) -> "EndpointConstraint":
        return cls(
            None if allowed is None else VertexSet.of(allowed),
            VertexSet.of(required),
            VertexSet.of(forbidden),
            tuple((int(u), int(v)) for u, v in pairing),
        )

    def validate_for(self, g: Graph) -> None:
        top = g.n
        for vs in (self.allowed, self.required, self.forbidden):
            if vs is not None and vs.mask >> top:
                raise InputError("constraint references vertices outside the graph")
        for u, v in self.pairing:
            if not (0 <= u < top and 0 <= v < top):
                raise InputError("pairing references vertices outside the graph")

    def admissible_mask(self, n: int) -> int:
        full = (1 << n) - 1
        allowed = full if self.allowed is None else self.allowed.mask
        return allowed & ~self.forbidden.mask & full

    def satisfied_by(self, endpoints: VertexSet, n: int) -> bool:
        e = endpoints.mask
        if e & ~self.admissible_mask(n):
            return False
        if self.required.mask & ~e:
            return False
        return all(((e >> u) & 1) == ((e >> v) & 1) for u, v in self.pairing)

    def tightened(self, *, allowed=None, required=(), forbidden=()) -> "EndpointConstraint":
        new_allowed = self.allowed
        if allowed is not None:
            a = VertexSet.of(allowed)
            new_allowed = a if new_allowed is None else new_allowed & a
        return EndpointConstraint(
            new_allowed,
            self.required | VertexSet.of(required),
            self.forbidden | VertexSet.of(forbidden),
            self.pairing,
        )


NO_CONSTRAINT = EndpointConstraint()


# ---------------------------------------------------------------------------
# backtracking enumerator
# ---------------------------------------------------------------------------


@dataclass
class _Enumerator:
    g: Graph
    c: EndpointConstraint
    prune: bool = True
    emit: Optional[Callable[[list[tuple[int, ...]]], bool]] = None
    budget: Optional[int] = None
    nodes: int = 0
    count: int = 0
    stopped: bool = False
    nbr: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.nbr = [VertexSet.of(self.g.adj[v]).mask for v in range(self.g.n)]
        self.admissible = self.c.admissible_mask(self.g.n)
        self.required = self.c.required.mask
        self.partner: dict[int, list[int]] = {}
        for u, v in self.c.pairing:
            self.partner.setdefault(u, []).append(v)
            self.partner.setdefault(v, []).append(u)
        self.paths: list[tuple[int, ...]] = []

    # -- pruning (degree-1 vertices must be endpoints; components need endpoints)

    def _viable(self, uncovered: int) -> bool:
        nbr, adm = self.nbr, self.admissible
        m = uncovered
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            free = nbr[v] & uncovered
            if not free:
                return False
            if self.prune and not free & (free - 1) and not (adm >> v) & 1:
                return False
        if not self.prune:
            return True
        rest = uncovered
        while rest:
            comp = rest & -rest
            frontier = comp
            while frontier:
                low = frontier & -frontier
                frontier ^= low
                grow = nbr[low.bit_length() - 1] & uncovered & ~comp
                comp |= grow
                frontier |= grow
            rest &= ~comp
            ends = comp & adm
            if not ends & (ends - 1):
                return False
            if ends == comp & self.required and bin(ends).count("1") % 2:
                return False
        return True

    def _pairing_ok(self, covered: int, endpoints: int, path: Sequence[int]) -> bool:
        for x in path:
            for y in self.partner.get(x, ()):
                if (covered >> y) & 1 and ((endpoints >> x) & 1) != ((endpoints >> y) & 1):
                    return False
        return True

    def run(self) -> int:
        full = (1 << self.g.n) - 1
        if self.g.n == 0:
            self._found()
            return self.count
        self._cover(full, 0)
        return self.count

    def _found(self) -> None:
        self.count += 1
        if self.emit is not None and self.emit(list(self.paths)) is False:
            self.stopped = True

    def _cover(self, uncovered: int, endpoints: int) -> None:
        if self.stopped:
            return
        if not uncovered:
            self._found()
            return
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise SearchBudgetExceeded
        v = (uncovered & -uncovered).bit_length() - 1
        self._arm1([v], uncovered & ~(1 << v), uncovered, endpoints)

    def _arm1(self, arm: list[int], free: int, uncovered: int, endpoints: int) -> None:
        # option: stop arm1 here and grow the other side of v
        if len(arm) > 1:
            self._arm2(arm, [arm[0]], free, uncovered, endpoints)
        last = arm[-1]
        if len(arm) > 1 and (self.required >> last) & 1:
            return  # last would become interior
        cand = self.nbr[last] & free
        while cand and not self.stopped:
            low = cand & -cand
            cand ^= low
            w = low.bit_length() - 1
            arm.append(w)
            self._arm1(arm, free & ~low, uncovered, endpoints)
            arm.pop()

    def _arm2(self, arm1: list[int], arm2: list[int], free: int, uncovered: int, endpoints: int) -> None:
        # arm2 empty: v is an endpoint; otherwise v is interior
        v = arm1[0]
        if len(arm2) == 1:
            self._close(arm1[::-1], free, uncovered, endpoints)
            if (self.required >> v) & 1:
                return
            cand = self.nbr[v] & free
            # each interior split is generated once: arm2 starts at a larger neighbour
            cand &= ~((1 << (arm1[1] + 1)) - 1)
        else:
            self._close(arm1[::-1] + arm2[1:], free, uncovered, endpoints)
            last = arm2[-1]
            if (self.required >> last) & 1:
                return
            cand = self.nbr[last] & free
        while cand and not self.stopped:
            low = cand & -cand
            cand ^= low
            arm2.append(low.bit_length() - 1)
            self._arm2(arm1, arm2, free & ~low, uncovered, endpoints)
            arm2.pop()

    def _close(self, path: list[int], free: int, uncovered: int, endpoints: int) -> None:
        a, b = path[0], path[-1]
        adm = self.admissible
        if not ((adm >> a) & 1 and (adm >> b) & 1):
            return
        for x in path[1:-1]:
            if (self.required >> x) & 1:
                return
        new_endpoints = endpoints | (1 << a) | (1 << b)
        pmask = 0
        for x in path:
            pmask |= 1 << x
        rest = uncovered & ~pmask
        covered = ((1 << self.g.n) - 1) & ~rest
        if self.partner and not self._pairing_ok(covered, new_endpoints, path):
            return
        if rest and not self._viable(rest):
            return
        self.paths.append(tuple(path))
        self._cover(rest, new_endpoints)
        self.paths.pop()


def enumerate_path_covers(
    g: Graph,
    c: EndpointConstraint = NO_CONSTRAINT,
    *,
    prune: bool = True,
    on_cover: Optional[Callable[[list[tuple[int, ...]]], object]] = None,
    budget: Optional[int] = None,
) -> int:
    """Count path covers of ``g`` whose endpoint set satisfies ``c``.

    Paths are grown around the lowest uncovered vertex, so every cover is
    produced exactly once and in a deterministic order.  ``on_cover`` receives
    each cover as a list of vertex tuples; returning ``False`` stops the walk.
    """
    c.validate_for(g)
    en = _Enumerator(g, c, prune=prune, emit=on_cover, budget=budget)
    return en.run()


def iter_path_covers(g: Graph, c: EndpointConstraint = NO_CONSTRAINT, prune: bool = True) -> list[PathSystem]:
    out: list[PathSystem] = []
    enumerate_path_covers(g, c, prune=prune, on_cover=lambda ps: out.append(PathSystem.of(ps)))
    return out


def count_path_covers(g: Graph, c: EndpointConstraint = NO_CONSTRAINT, engine: str = "backtrack") -> int:
    """Dispatch to the backtracking enumerator or the frontier DP (``engine="dp"``)."""
    if engine == "backtrack":
        return enumerate_path_covers(g, c)
    if engine == "dp":
        from .frontier import count_path_covers_dp

        return count_path_covers_dp(g, c)
    raise InputError(f"unknown engine {engine!r}")


# ---------------------------------------------------------------------------
# path factors and the isolated-vertex criterion
# ---------------------------------------------------------------------------


def find_path_factor(g: Graph, budget: Optional[int] = 10**7) -> Optional[PathSystem]:
    """First path factor in enumeration order, or ``None`` if none exists.

    Raises :class:`SearchBudgetExceeded` when the search is cut short.
    """
    found: list[PathSystem] = []

    def stop(ps):
        found.append(PathSystem.of(ps))
        return False

    enumerate_path_covers(g, NO_CONSTRAINT, on_cover=stop, budget=budget)
    return found[0] if found else None


def has_path_factor(g: Graph) -> bool:
    return find_path_factor(g) is not None


@dataclass(frozen=True)
class NoPathFactorWitness:
    s: VertexSet
    isolated_after: int

    def to_json(self) -> dict:
        return {"s": self.s.to_list(), "isolated_after": self.isolated_after}


EXHAUSTIVE_FACTOR_LIMIT = 20


def _isolated_after(nbr: list[int], n: int, s: int) -> int:
    keep = ((1 << n) - 1) & ~s
    count = 0
    m = keep
    while m:
        low = m & -m
        m ^= low
        if not nbr[low.bit_length() - 1] & keep:
            count += 1
    return count


def akiyama_witness(g: Graph, heuristic: bool = False) -> Optional[NoPathFactorWitness]:
    """A set S with ``i(G-S) > 2|S|`` of minimum size, or ``None`` if none exists.

    Exhaustive over all subsets for graphs with at most 20 vertices.  With
    ``heuristic=True`` larger graphs are searched over |S| <= 2 only, so a
    ``None`` answer is then not a proof.
    """
    n = g.n
    if n > EXHAUSTIVE_FACTOR_LIMIT and not heuristic:
        raise InputError(f"exhaustive witness search is limited to {EXHAUSTIVE_FACTOR_LIMIT} vertices")
    nbr = [VertexSet.of(g.adj[v]).mask for v in range(n)]
    max_size = n if n <= EXHAUSTIVE_FACTOR_LIMIT else 2
    for size in range(0, max_size + 1):
        # i(G-S) <= n - |S|, so larger S cannot beat 2|S| once 3|S| >= n
        if 3 * size >= n and size > 0:
            break
        for combo in itertools.combinations(range(n), size):
            s = 0
            for v in combo:
                s |= 1 << v
            iso = _isolated_after(nbr, n, s)
            if iso > 2 * size:
                return NoPathFactorWitness(VertexSet(s), iso)
    return None


def check_witness(g: Graph, w: NoPathFactorWitness) -> bool:
    rest, _ = delete_vertices(g, w.s)
    iso = sum(1 for v in range(rest.n) if not rest.adj[v])
    return iso == w.isolated_after and iso > 2 * len(w.s)


# ---------------------------------------------------------------------------
# the two structural observations about path factors
# ---------------------------------------------------------------------------


@dataclass
class ObservationReport:
    ok: bool
    degree_one_violations: list[int]
    parity_violations: list[list[int]]


def observation_checks(g: Graph, ps: PathSystem, removed: Iterable[int] = ()) -> ObservationReport:
    """Check both endpoint observations on ``g`` minus the paths indexed by ``removed``.

    In what remains, every degree-1 vertex must be an endpoint of ``ps`` and
    every component must hold a positive even number of endpoints.
    """
    if not is_path_factor(g, ps):
        raise InputError("observation checks need a path factor of g")
    removed = set(removed)
    if any(not 0 <= i < len(ps.paths) for i in removed):
        raise InputError("removed path index out of range")
    gone = VertexSet.of(v for i in removed for v in ps.paths[i])
    rest, index = delete_vertices(g, gone)
    back = {new: old for old, new in index.items()}
    ends = ps.endpoints
    deg1 = [back[v] for v in range(rest.n) if rest.degree(v) == 1 and back[v] not in ends]
    parity = []
    for comp in connected_components(rest):
        orig = [back[v] for v in comp]
        k = sum(1 for v in orig if v in ends)
        if k == 0 or k % 2:
            parity.append(orig)
    return ObservationReport(not deg1 and not parity, deg1, parity)
