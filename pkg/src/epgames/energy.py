"""Energy games: minimum initial credit by progress-measure lifting."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .game import P1, GameGraph, MemorylessStrategy
from .parity import Region


@dataclass(frozen=True)
class CreditMap:
    """Minimum initial credit per state; ``None`` marks an unwinnable state."""

    credit: Mapping[int, int | None]

    def __getitem__(self, q: int) -> int | None:
        return self.credit[q]

    @property
    def winning(self) -> frozenset[int]:
        return frozenset(q for q, c in self.credit.items() if c is not None)

    def items(self):
        return self.credit.items()


def extract_min_credit(cm: CreditMap, q: int) -> int | None:
    return cm.credit[q]


@dataclass(frozen=True)
class EnergySolution:
    region: Region
    credits: CreditMap
    strategy: MemorylessStrategy


def solve_energy(
    g: GameGraph,
    weights: Mapping[tuple[int, int], int] | None = None,
    within: Iterable[int] | None = None,
) -> EnergySolution:
    """Least fixpoint of the lifting operator.

    ``weights`` defaults to the game's own weights.  With ``within`` the game
    is the subgraph induced by those states, which must be a game graph; the
    credit bound ``(n-1)*W`` then uses that subgraph's size and weights.
    """
    weights = g.weight if weights is None else weights
    if within is None:
        states = list(g.states)
        inside = [True] * g.n
    else:
        states = sorted(set(within))
        inside = [False] * g.n
        for q in states:
            inside[q] = True
    succ = {q: [(t, weights[(q, t)]) for t in g.succ[q] if inside[t]] for q in states}
    pred = {q: [] for q in states}
    for q in states:
        for t, _ in succ[q]:
            pred[t].append(q)
    top_weight = max((abs(w) for q in states for _, w in succ[q]), default=0)
    bound = (len(states) - 1) * top_weight
    owner = g.owner

    credit = {q: 0 for q in states}
    queue = deque(states)
    queued = set(states)
    while queue:
        q = queue.popleft()
        queued.discard(q)
        old = credit[q]
        if old is None:
            continue
        new = _lift(credit, succ[q], owner[q] == P1)
        if new is not None and new > bound:
            new = None
        if new == old or (new is not None and new < old):
            continue
        credit[q] = new
        for v in pred[q]:
            if v not in queued and credit[v] is not None:
                queued.add(v)
                queue.append(v)

    choice = {}
    for q in states:
        if owner[q] == P1 and credit[q] is not None:
            choice[q] = min(
                (t for t, w in succ[q] if credit[t] is not None and max(0, credit[t] - w) == credit[q])
            )
    return EnergySolution(
        Region(P1, frozenset(q for q in states if credit[q] is not None)),
        CreditMap(credit),
        MemorylessStrategy(P1, choice),
    )


def _lift(credit, edges, minimize: bool):
    best = None
    for t, w in edges:
        c = credit[t]
        need = None if c is None else max(0, c - w)
        if minimize:
            if need is not None and (best is None or need < best):
                best = need
        else:
            if need is None:
                return None
            if best is None or need > best:
                best = need
    return best
