"""Frontier dynamic programmes over a vertex order.

Vertices are introduced one at a time; when a vertex arrives, each edge to an
earlier vertex is either taken or skipped.  A state records, for every vertex
still on the frontier, its degree so far and the other end of its fragment
(``DANGLING`` once that end has left the frontier).  A vertex leaves once all
its neighbours have arrived, and its final degree is checked then.

Two modes share the machinery:

* path covers: final degrees 1 or 2, no cycles, endpoint constraints;
* Hamiltonian cycles: final degree 2, one closing edge at the very end.

For ladders and 3-row strips in column order the frontier holds at most
``rows + 1`` vertices.  Products ``T x P_m`` processed layer by layer keep a
frontier of about ``|V(T)|`` vertices.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Optional, Sequence

from .constructions import cartesian_product, path_graph
from .factors import NO_CONSTRAINT, EndpointConstraint
from .graph import Graph, InputError

INTERIOR = -2
DANGLING = -1


def column_order(rows: int, cols: int) -> list[int]:
    """Column-major order of ``P_rows x P_cols`` as built by :func:`cartesian_product`."""
    return [x * cols + y for y in range(cols) for x in range(rows)]


def layer_order(g_order: int, h_order: int, left_order: Optional[Sequence[int]] = None) -> list[int]:
    """Order of ``G x H`` running through ``G`` inside each layer ``y`` of ``H``."""
    left = range(g_order) if left_order is None else left_order
    return [x * h_order + y for y in range(h_order) for x in left]


def _check_order(g: Graph, order: Optional[Sequence[int]]) -> list[int]:
    order = list(range(g.n)) if order is None else list(order)
    if sorted(order) != list(range(g.n)):
        raise InputError("order must be a permutation of the vertices")
    return order


def _join(ent: tuple, ku: int, kv: int, du: int, mu: int, dv: int, mv: int, slot: dict) -> tuple:
    e = list(ent)
    e[ku] = (du + 1, mu)
    e[kv] = (dv + 1, mv)
    for end, other in ((mu, mv), (mv, mu)):
        if end >= 0:
            ke = slot[end]
            e[ke] = (e[ke][0], other)
    if du == 1:
        e[ku] = (2, INTERIOR)
    if dv == 1:
        e[kv] = (2, INTERIOR)
    return tuple(e)


def count_path_covers_dp(
    g: Graph,
    c: EndpointConstraint = NO_CONSTRAINT,
    order: Optional[Sequence[int]] = None,
) -> int:
    """Number of path covers of ``g`` (paths on >= 2 vertices) satisfying ``c``."""
    c.validate_for(g)
    n = g.n
    if n == 0:
        return 1
    order = _check_order(g, order)
    pos = {v: i for i, v in enumerate(order)}
    leaves_at: dict[int, list[int]] = defaultdict(list)
    for v in range(n):
        if not g.adj[v]:
            return 0
        leaves_at[max(pos[v], max(pos[w] for w in g.adj[v]))].append(v)
    admissible = c.admissible_mask(n)
    required = c.required.mask
    partner: dict[int, set[int]] = defaultdict(set)
    for u, v in c.pairing:
        if u == v:
            continue  # u in E <=> u in E always holds
        partner[u].add(v)
        partner[v].add(u)

    frontier: list[int] = []
    gone: set[int] = set()
    # state: ((degree, mate) per frontier vertex, pending pair checks (left, partner, left_is_end))
    states: dict[tuple, int] = {((), frozenset()): 1}

    for i, v in enumerate(order):
        frontier.append(v)
        slot = {u: k for k, u in enumerate(frontier)}
        states = {(ent + ((0, v),), pend): cnt for (ent, pend), cnt in states.items()}
        for u in sorted(g.adj[v], key=pos.__getitem__):
            if pos[u] >= i:
                continue
            ku, kv = slot[u], slot[v]
            nxt: dict[tuple, int] = defaultdict(int)
            for (ent, pend), cnt in states.items():
                nxt[(ent, pend)] += cnt
                du, mu = ent[ku]
                dv, mv = ent[kv]
                if du == 2 or dv == 2 or mu == v:
                    continue
                nxt[(_join(ent, ku, kv, du, mu, dv, mv, slot), pend)] += cnt
            states = nxt

        leaving = leaves_at.get(i, [])
        if not leaving:
            continue
        drop = {slot[x] for x in leaving}
        nxt = defaultdict(int)
        for (ent, pend), cnt in states.items():
            e = list(ent)
            pending = set(pend)
            done = set(gone)
            ok = True
            for x in leaving:
                deg, mate = e[slot[x]]
                is_end = deg == 1
                if deg == 0 or (is_end and not (admissible >> x) & 1) or (not is_end and (required >> x) & 1):
                    ok = False
                    break
                if is_end and mate >= 0:
                    km = slot[mate]
                    e[km] = (e[km][0], DANGLING)
                for y in sorted(partner.get(x, ())):
                    if y in done:
                        if (y, x, is_end) not in pending:
                            ok = False
                            break
                        pending.discard((y, x, is_end))
                    else:
                        pending.add((x, y, is_end))
                if not ok:
                    break
                done.add(x)
            if ok:
                kept = tuple(s for k, s in enumerate(e) if k not in drop)
                nxt[(kept, frozenset(pending))] += cnt
        states = nxt
        gone.update(leaving)
        frontier = [u for u in frontier if u not in gone]
    return sum(cnt for (ent, pend), cnt in states.items() if not ent and not pend)


def count_hamiltonian_cycles_dp(g: Graph, order: Optional[Sequence[int]] = None) -> tuple[int, int]:
    """Number of Hamiltonian cycles of ``g`` and the peak number of DP states.

    Exhaustive: a zero count proves the graph non-Hamiltonian.
    """
    n = g.n
    if n < 3:
        raise InputError("Hamiltonicity needs at least 3 vertices")
    order = _check_order(g, order)
    pos = {v: i for i, v in enumerate(order)}
    leaves_at: dict[int, list[int]] = defaultdict(list)
    for v in range(n):
        if len(g.adj[v]) < 2:
            return 0, 0
        leaves_at[max(pos[v], max(pos[w] for w in g.adj[v]))].append(v)

    frontier: list[int] = []
    states: dict[tuple, int] = {(): 1}
    peak = 1
    for i, v in enumerate(order):
        frontier.append(v)
        slot = {u: k for k, u in enumerate(frontier)}
        states = {ent + ((0, v),): cnt for ent, cnt in states.items()}
        last = i == n - 1
        for u in sorted(g.adj[v], key=pos.__getitem__):
            if pos[u] >= i:
                continue
            ku, kv = slot[u], slot[v]
            nxt: dict[tuple, int] = defaultdict(int)
            for ent, cnt in states.items():
                nxt[ent] += cnt
                du, mu = ent[ku]
                dv, mv = ent[kv]
                if du == 2 or dv == 2:
                    continue
                if mu == v:
                    # closing edge: only as the final edge of a spanning cycle
                    if not last:
                        continue
                    e = list(ent)
                    e[ku] = (2, INTERIOR)
                    e[kv] = (2, INTERIOR)
                    if all(d == 2 for d, _ in e):
                        nxt[tuple(e)] += cnt
                    continue
                nxt[_join(ent, ku, kv, du, mu, dv, mv, slot)] += cnt
            states = nxt
        leaving = leaves_at.get(i, [])
        if leaving:
            drop = {slot[x] for x in leaving}
            nxt = defaultdict(int)
            for ent, cnt in states.items():
                if all(ent[slot[x]][0] == 2 for x in leaving):
                    nxt[tuple(s for k, s in enumerate(ent) if k not in drop)] += cnt
            states = nxt
            leaving_set = set(leaving)
            frontier = [u for u in frontier if u not in leaving_set]
        peak = max(peak, len(states))
        if not states:
            return 0, peak
    return sum(states.values()), peak


def strip(rows: int, cols: int) -> Graph:
    return cartesian_product(path_graph(rows), path_graph(cols))


def count_strip_covers(rows: int, cols: int, c: EndpointConstraint = NO_CONSTRAINT) -> int:
    """Path covers of ``P_rows x P_cols`` under ``c`` (vertex ``(x, y)`` is ``(x-1)*cols + (y-1)``)."""
    return count_path_covers_dp(strip(rows, cols), c, column_order(rows, cols))
