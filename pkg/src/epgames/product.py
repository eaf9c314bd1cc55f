"""Clamped energy product: energy parity as a plain parity game.

Node ``(q, level)`` for ``level`` in ``0..cap`` has index ``q*(cap+1)+level``.
Moving along an edge adds its weight and clamps at ``cap``; a negative level
leads to an absorbing sink of odd priority.  Clamping only ever lowers the
tracked energy, so player-1 wins in the product imply wins in the game.
"""

from __future__ import annotations

from functools import cached_property

from .game import P1, Arena, GameGraph
from .parity import solve_arena


class TooLarge(RuntimeError):
    pass


DEFAULT_NODE_LIMIT = 1_000_000


def default_cap(g: GameGraph) -> int:
    n, d, w = g.n, g.num_priorities, g.max_weight
    return max(2 * (n - 1) * w, 4 * n * n * d * w * w, 1)


class EnergyProduct:
    def __init__(self, g: GameGraph, cap: int, node_limit: int = DEFAULT_NODE_LIMIT):
        size = g.n * (cap + 1) + 1
        if size > node_limit:
            raise TooLarge(f"product with cap {cap} has {size} nodes (limit {node_limit})")
        self.g = g
        self.cap = cap
        self.sink = size - 1
        width = cap + 1
        owner = [0] * size
        priority = [0] * size
        succ: list[list[int]] = [None] * size  # type: ignore[list-item]
        for q in g.states:
            out = [(t, g.weight[(q, t)]) for t in g.succ[q]]
            base = q * width
            oq, pq = g.owner[q], g.priority[q]
            for level in range(width):
                i = base + level
                owner[i] = oq
                priority[i] = pq
                targets = []
                for t, w in out:
                    nl = level + w
                    if nl < 0:
                        if self.sink not in targets:
                            targets.append(self.sink)
                    else:
                        targets.append(t * width + (nl if nl < cap else cap))
                succ[i] = targets
        owner[self.sink] = P1
        priority[self.sink] = 1
        succ[self.sink] = [self.sink]
        self.arena = Arena(owner, priority, succ)

    def node(self, q: int, level: int) -> int:
        return q * (self.cap + 1) + level

    def unpack(self, i: int) -> tuple[int, int]:
        return divmod(i, self.cap + 1)

    def step(self, level: int, q: int, t: int) -> int | None:
        nl = level + self.g.weight[(q, t)]
        if nl < 0:
            return None
        return nl if nl < self.cap else self.cap

    @cached_property
    def solution(self):
        win, strategy = solve_arena(self.arena)
        member = bytearray(len(self.arena))
        for v in win[P1]:
            member[v] = 1
        return member, strategy

    def winning_mask(self) -> bytearray:
        return self.solution[0]

    def min_credits(self, limit: int) -> dict[int, int]:
        """Least level ``c <= limit`` with ``(q, c)`` winning, per winning ``q``."""
        member = self.winning_mask()
        out = {}
        for q in self.g.states:
            for c in range(min(limit, self.cap) + 1):
                if member[self.node(q, c)]:
                    out[q] = c
                    break
        return out
