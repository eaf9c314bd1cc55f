"""Attractors and a Zielonka-style parity solver.

Player 1 wins a play when the minimum priority seen infinitely often is
even.  Everything here runs on an :class:`~epgames.game.Arena`, so the same
code solves plain game graphs and the large product games built by the
oracle and by strategy synthesis.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .game import P1, P2, Arena, GameGraph, MemorylessStrategy, opponent


@dataclass(frozen=True)
class Region:
    player: int
    members: frozenset[int]

    def __contains__(self, q: int) -> bool:
        return q in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> list[int]:
        return sorted(self.members)


def _as_arena(g) -> Arena:
    return g.arena if isinstance(g, GameGraph) else g


def _mask(size: int, nodes: Iterable[int]) -> bytearray:
    mask = bytearray(size)
    for v in nodes:
        mask[v] = 1
    return mask


def attractor_nodes(
    ar: Arena, inside: bytearray, player: int, target: Iterable[int]
) -> tuple[list[int], dict[int, int], bytearray]:
    """Attractor of ``target`` for ``player`` inside the node mask ``inside``.

    Returns (members in discovery order, strategy, membership mask).  The
    strategy maps each attracted node of ``player`` outside the target to its
    smallest-id successor of strictly lower rank.
    """
    owner, succ, pred = ar.owner, ar.succ, ar.pred
    n = len(owner)
    rank = [-1] * n
    member = bytearray(n)
    order: list[int] = []
    queue: deque[int] = deque()
    for v in target:
        if inside[v] and not member[v]:
            member[v] = 1
            rank[v] = 0
            order.append(v)
            queue.append(v)
    count: dict[int, int] = {}
    attracted_by_player: list[int] = []
    while queue:
        u = queue.popleft()
        r = rank[u] + 1
        for v in pred[u]:
            if not inside[v] or member[v]:
                continue
            if owner[v] == player:
                attracted_by_player.append(v)
            else:
                left = count.get(v)
                if left is None:
                    left = sum(1 for t in succ[v] if inside[t])
                left -= 1
                count[v] = left
                if left > 0:
                    continue
            member[v] = 1
            rank[v] = r
            order.append(v)
            queue.append(v)
    strategy = {}
    for v in attracted_by_player:
        rv = rank[v]
        strategy[v] = min(t for t in succ[v] if inside[t] and member[t] and rank[t] < rv)
    return order, strategy, member


def attractor(g, player: int, target: Iterable[int], within: Iterable[int] | None = None):
    """Set of states from which ``player`` can force a visit to ``target``.

    ``within`` restricts the computation to an induced subgraph.  Returns the
    attractor as a :class:`Region` together with the attractor strategy for
    ``player`` (a :class:`MemorylessStrategy` on attracted, non-target states).
    """
    ar = _as_arena(g)
    inside = bytearray(b"\x01") * len(ar) if within is None else _mask(len(ar), within)
    order, strategy, _ = attractor_nodes(ar, inside, player, target)
    return Region(player, frozenset(order)), MemorylessStrategy(player, strategy)


def solve_arena(ar: Arena, nodes: list[int] | None = None):
    """Zielonka's algorithm on the subarena induced by ``nodes``.

    ``nodes`` must induce a game graph.  Returns (player-1 winning nodes,
    player-2 winning nodes, strategy) where the strategy maps every node in
    either region owned by that region's winner to a successor.
    """
    if nodes is None:
        nodes = list(range(len(ar)))
    return _zielonka(ar, nodes)


def _zielonka(ar: Arena, nodes: list[int]):
    size = len(ar)
    prio, owner, succ = ar.priority, ar.owner, ar.succ
    win = {P1: [], P2: []}
    strategy: dict[int, int] = {}
    inside = _mask(size, nodes)
    remaining = nodes
    while remaining:
        low = min(prio[v] for v in remaining)
        alpha = P1 if low % 2 == 0 else P2
        beta = opponent(alpha)
        top = [v for v in remaining if prio[v] == low]
        _, a_strat, in_a = attractor_nodes(ar, inside, alpha, top)
        rest = [v for v in remaining if not in_a[v]]
        sub_win, sub_strat = _zielonka(ar, rest) if rest else ({P1: [], P2: []}, {})
        if not sub_win[beta]:
            win[alpha].extend(remaining)
            strategy.update(sub_strat)
            strategy.update(a_strat)
            for v in top:
                if owner[v] == alpha:
                    strategy[v] = min(t for t in succ[v] if inside[t])
            break
        b_nodes, b_strat, in_b = attractor_nodes(ar, inside, beta, sub_win[beta])
        win[beta].extend(b_nodes)
        for v in sub_win[beta]:
            if owner[v] == beta:
                strategy[v] = sub_strat[v]
        strategy.update(b_strat)
        for v in b_nodes:
            inside[v] = 0
        remaining = [v for v in remaining if not in_b[v]]
    return win, strategy


@dataclass(frozen=True)
class ParitySolution:
    win1: Region
    win2: Region
    strategy1: MemorylessStrategy
    strategy2: MemorylessStrategy

    def region(self, player: int) -> Region:
        return self.win1 if player == P1 else self.win2


def solve_parity(g: GameGraph) -> ParitySolution:
    """Winning regions and memoryless winning strategies of the parity game."""
    win, strategy = solve_arena(g.arena)
    s1 = {q: t for q, t in strategy.items() if g.owner[q] == P1}
    s2 = {q: t for q, t in strategy.items() if g.owner[q] == P2}
    return ParitySolution(
        Region(P1, frozenset(win[P1])),
        Region(P2, frozenset(win[P2])),
        MemorylessStrategy(P1, dict(sorted(s1.items()))),
        MemorylessStrategy(P2, dict(sorted(s2.items()))),
    )
