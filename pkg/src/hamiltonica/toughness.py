"""Exact 1-toughness and toughness for small graphs.

Only separating sets count: ``S`` is separating when ``G - S`` has at least
two components.  Complete graphs therefore have no toughness value here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .graph import Graph, InputError, VertexSet, is_connected

ONE_TOUGH_LIMIT = 24
TOUGHNESS_LIMIT = 18


@dataclass(frozen=True)
class NotOneToughWitness:
    s: VertexSet
    components_after: int

    def to_json(self) -> dict:
        return {"s": self.s.to_list(), "omega": self.components_after, "cardinality": len(self.s)}


def _masks(g: Graph) -> list[int]:
    return [VertexSet.of(g.adj[v]).mask for v in range(g.n)]


def components_after(nbr: list[int], n: int, s: int) -> int:
    """Number of components of ``G - S`` with ``S`` given as a bitmask."""
    rest = ((1 << n) - 1) & ~s
    count = 0
    while rest:
        frontier = rest & -rest
        seen = frontier
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = nbr[low.bit_length() - 1] & rest & ~seen
            seen |= new
            frontier |= new
        rest &= ~seen
        count += 1
    return count


def _mask(combo) -> int:
    s = 0
    for v in combo:
        s |= 1 << v
    return s


def _is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def is_one_tough(g: Graph) -> Optional[NotOneToughWitness]:
    """``None`` if every separating set S has ``|S| >= omega(G - S)``.

    Otherwise returns the lexicographically least violating S among those of
    minimum size.
    """
    n = g.n
    if n > ONE_TOUGH_LIMIT:
        raise InputError(f"exhaustive toughness search is limited to {ONE_TOUGH_LIMIT} vertices")
    nbr = _masks(g)
    for size in range(n):
        # omega(G - S) <= n - |S|, so a violation needs n - |S| > |S|
        if n - size <= size:
            break
        for combo in itertools.combinations(range(n), size):
            s = _mask(combo)
            k = components_after(nbr, n, s)
            if k >= 2 and k > size:
                return NotOneToughWitness(VertexSet(s), k)
    return None


def check_tough_witness(g: Graph, w: NotOneToughWitness) -> bool:
    k = components_after(_masks(g), g.n, w.s.mask)
    return k == w.components_after and k >= 2 and k > len(w.s)


@dataclass(frozen=True)
class ToughnessResult:
    value: Fraction
    s: VertexSet
    components_after: int


def toughness_witness(g: Graph) -> ToughnessResult:
    """Minimum of ``|S| / omega(G - S)`` over separating sets, with a minimiser."""
    n = g.n
    if n > TOUGHNESS_LIMIT:
        raise InputError(f"exact toughness is limited to {TOUGHNESS_LIMIT} vertices")
    if _is_complete(g):
        raise InputError("complete graphs have no separating set")
    if not is_connected(g):
        raise InputError("toughness is defined here for connected graphs")
    nbr = _masks(g)
    best: Optional[ToughnessResult] = None
    for size in range(1, n - 1):
        # omega <= n - size bounds the ratio from below; it grows with size
        if best is not None and Fraction(size, n - size) >= best.value:
            break
        for combo in itertools.combinations(range(n), size):
            s = _mask(combo)
            k = components_after(nbr, n, s)
            if k >= 2 and (best is None or Fraction(size, k) < best.value):
                best = ToughnessResult(Fraction(size, k), VertexSet(s), k)
    assert best is not None
    return best


def toughness(g: Graph) -> Fraction:
    return toughness_witness(g).value


@dataclass
class ToughReport:
    hamiltonian: Optional[bool]
    one_tough: bool
    witness: Optional[NotOneToughWitness]
    toughness: Optional[Fraction]
    implication_holds: bool

    @property
    def converse_failure(self) -> bool:
        """1-tough but not Hamiltonian: legal, and worth counting."""
        return self.one_tough and self.hamiltonian is False

    def to_json(self) -> dict:
        return {
            "hamiltonian": self.hamiltonian,
            "one_tough": self.one_tough,
            "witness": self.witness.to_json() if self.witness else None,
            "toughness": None if self.toughness is None else str(self.toughness),
            "implication_holds": self.implication_holds,
        }


def hamiltonian_implies_tough_check(g: Graph, budget: int = 10**7) -> ToughReport:
    """Run both deciders and check that Hamiltonian implies 1-tough.

    ``hamiltonian`` is ``None`` when the solver ran out of budget.
    """
    from .hamiltonicity import Outcome, find_hamiltonian_cycle

    verdict = find_hamiltonian_cycle(g, budget) if g.n >= 3 else None
    ham = None if verdict is None or verdict.outcome is Outcome.UNKNOWN else verdict.found
    if g.n < 3:
        ham = False
    w = is_one_tough(g)
    t = None
    if g.n <= TOUGHNESS_LIMIT and is_connected(g) and not _is_complete(g):
        t = toughness(g)
    return ToughReport(ham, w is None, w, t, not (ham and w is not None))
