"""Constructive warm start for Hamiltonian cycles in ``G x P_n``.

Given a path factor of ``G`` and even ``n``, every grid ``P x P_n`` over a
path ``P`` of the factor has Hamiltonian cycles.  Two disjoint cycles that
contain parallel layer edges ``(x,y)(x,y+1)`` and ``(x',y)(x',y+1)`` with
``xx'`` an edge of ``G`` merge into one by swapping those edges for the rungs
``(x,y)(x',y)`` and ``(x,y+1)(x',y+1)``.  The search picks grid cycles and
swap squares with backtracking.  It can only find cycles, never refute them.
"""

from __future__ import annotations

from typing import Optional

from .factors import find_path_factor
from .graph import Graph

Edge = tuple[int, int]


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def grid_cycles(k: int, n: int, limit: int = 64, budget: int = 200_000) -> list[frozenset[Edge]]:
    """Up to ``limit`` Hamiltonian cycles of ``P_k x P_n`` on vertices ``i * n + y``."""
    total = k * n
    if total < 4 or (total % 2 and k > 1 and n > 1):
        return []
    if k == 1 or n == 1:
        return []

    def nbrs(v: int) -> list[int]:
        i, y = divmod(v, n)
        out = []
        if y + 1 < n:
            out.append(v + 1)
        if i + 1 < k:
            out.append(v + n)
        if y > 0:
            out.append(v - 1)
        if i > 0:
            out.append(v - n)
        return out

    adj = [nbrs(v) for v in range(total)]
    found: list[frozenset[Edge]] = []
    seen: set[frozenset[Edge]] = set()
    path = [0]
    visited = [False] * total
    visited[0] = True
    nodes = 0

    def stranded(v: int, w: int) -> bool:
        # an unvisited neighbour of the vertex just left needs two usable neighbours
        for z in adj[v]:
            if not visited[z]:
                usable = sum(1 for t in adj[z] if not visited[t] or t == w or t == 0)
                if usable < 2:
                    return True
        return False

    def extend() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget or len(found) >= limit:
            return True
        v = path[-1]
        if len(path) == total:
            if 0 in adj[v]:
                cyc = frozenset(_edge(path[i], path[(i + 1) % total]) for i in range(total))
                if cyc not in seen:
                    seen.add(cyc)
                    found.append(cyc)
            return False
        for w in adj[v]:
            if not visited[w]:
                visited[w] = True
                path.append(w)
                if not stranded(v, w):
                    stop = extend()
                    if stop:
                        path.pop()
                        visited[w] = False
                        return True
                path.pop()
                visited[w] = False
        return False

    extend()
    return found


def _to_sequence(edges: set[Edge], total: int) -> Optional[tuple[int, ...]]:
    nb: list[list[int]] = [[] for _ in range(total)]
    for u, v in edges:
        nb[u].append(v)
        nb[v].append(u)
    if any(len(x) != 2 for x in nb):
        return None
    out = [0]
    prev, cur = -1, 0
    for _ in range(total - 1):
        a, b = nb[cur]
        prev, cur = cur, (a if a != prev else b)
        out.append(cur)
    return tuple(out)


def square_merge_cycle(left: Graph, n: int, budget: int = 100_000) -> Optional[tuple[int, ...]]:
    """A Hamiltonian cycle of ``left x P_n`` (numbered ``x * n + y``) or ``None``.

    ``None`` means only that this construction did not succeed.
    """
    if n < 2 or n % 2 or left.n == 0:
        return None
    factor = find_path_factor(left)
    if factor is None:
        return None
    comps = [list(p) for p in factor.paths]
    comp_of = {x: ci for ci, p in enumerate(comps) for x in p}

    # grow the component tree breadth first
    order = [0]
    placed = {0}
    for ci in order:
        for x in comps[ci]:
            for xx in left.neighbors(x):
                cj = comp_of[xx]
                if cj not in placed:
                    placed.add(cj)
                    order.append(cj)
    if len(order) != len(comps):
        return None

    def lift(ci: int, cyc: frozenset[Edge]) -> frozenset[Edge]:
        p = comps[ci]
        return frozenset(
            _edge(p[u // n] * n + u % n, p[v // n] * n + v % n) for u, v in cyc
        )

    cache: dict[int, list[frozenset[Edge]]] = {}

    def cycles_of(ci: int) -> list[frozenset[Edge]]:
        k = len(comps[ci])
        if k not in cache:
            cache[k] = grid_cycles(k, n)
        return [lift(ci, c) for c in cache[k]]

    rank = {ci: i for i, ci in enumerate(order)}
    # rows of a component that later components may still merge into
    ports = {
        ci: {x for x in comps[ci] for xx in left.neighbors(x) if rank[comp_of[xx]] > rank[ci]}
        for ci in order
    }

    def signature(ci: int, cyc: frozenset[Edge]) -> frozenset[Edge]:
        return frozenset(e for e in cyc if e[0] // n in ports[ci] and e[1] == e[0] + 1)

    attempts = 0

    def place(idx: int, edges: set[Edge], merged: set[int]) -> Optional[set[Edge]]:
        nonlocal attempts
        if idx == len(order):
            return edges
        ci = order[idx]
        links = [(x, xx) for xx in comps[ci] for x in left.neighbors(xx) if x in merged]
        options = cycles_of(ci)
        for x, xx in links:
            for y in range(n - 1):
                e1 = (x * n + y, x * n + y + 1)
                if e1 not in edges:
                    continue
                e2 = (xx * n + y, xx * n + y + 1)
                tried: set[frozenset[Edge]] = set()
                for cyc in options:
                    if e2 not in cyc:
                        continue
                    # cycles that agree on the remaining merge rows are interchangeable
                    sig = signature(ci, cyc - {e2})
                    if sig in tried:
                        continue
                    tried.add(sig)
                    attempts += 1
                    if attempts > budget:
                        return None
                    nxt = (edges | cyc) - {e1, e2}
                    nxt.add(_edge(x * n + y, xx * n + y))
                    nxt.add(_edge(x * n + y + 1, xx * n + y + 1))
                    done = place(idx + 1, nxt, merged | set(comps[ci]))
                    if done is not None:
                        return done
                    if attempts > budget:
                        return None
        return None

    for root in cycles_of(order[0]):
        result = place(1, set(root), set(comps[order[0]]))
        if result is not None:
            return _to_sequence(result, left.n * n)
        if attempts > budget:
            break
    return None


def solve_product_with_path(left: Graph, n: int, budget: int = 10**9):
    """Decide ``left x P_n``: the square-merge construction first, exact search after.

    The warm start only ever contributes certified cycles, so the verdict is
    the same as :func:`find_hamiltonian_cycle` on the product.
    """
    from .constructions import cartesian_product, path_graph
    from .hamiltonicity import HamVerdict, Outcome, find_hamiltonian_cycle, verify_cycle

    g = cartesian_product(left, path_graph(n))
    cycle = square_merge_cycle(left, n)
    if cycle is not None and verify_cycle(g, cycle):
        return HamVerdict(Outcome.FOUND, cycle, 0, budget, "square-merge construction")
    return find_hamiltonian_cycle(g, budget)
