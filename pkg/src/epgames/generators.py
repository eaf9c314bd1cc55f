"""Instance generators."""

from __future__ import annotations

import random

from .game import P1, P2, GameGraph


def gen_fig1(n: int, w: int) -> GameGraph:
    """Chain ``q0 .. q{n-1}`` of player-1 states.

    ``q0`` has priority 0, the others priority 1.  Neighbours are linked in
    both directions with weight ``-w``; ``q{n-1}`` has a ``+1`` self-loop.
    Winning from ``q0`` needs credit ``(n-1)*w`` and memory to pump the loop.
    """
    if n < 1 or w < 0:
        raise ValueError("need n >= 1 and w >= 0")
    edges = []
    for i in range(n - 1):
        edges.append((i, i + 1, -w))
        edges.append((i + 1, i, -w))
    edges.append((n - 1, n - 1, 1))
    return GameGraph.build([P1] * n, [0] + [1] * (n - 1), edges)


def gen_random(n: int, d: int, w: int, density: float = 0.3, seed: int = 0) -> GameGraph:
    """Seeded random game.

    Each ordered pair is an edge with probability ``density``; a state left
    without successors gets one uniformly chosen edge.
    """
    rng = random.Random(seed)
    owner = [rng.choice((P1, P2)) for _ in range(n)]
    priority = [rng.randrange(d) for _ in range(n)]
    edges = []
    for s in range(n):
        targets = [t for t in range(n) if rng.random() < density]
        if not targets:
            targets = [rng.randrange(n)]
        edges.extend((s, t, rng.randint(-w, w)) for t in targets)
    return GameGraph.build(owner, priority, edges)
