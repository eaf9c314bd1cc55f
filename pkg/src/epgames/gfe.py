"""Good-for-energy strategies.

A player-1 strategy is good-for-energy at ``q`` when every cycle of every
outcome from ``q`` either has positive weight, or has weight zero and an
even minimum priority.  Memoryless good-for-energy strategies are found by
solving an energy game on perturbed weights: every state of priority ``k``
adds ``(-1)^k * (N^(d-k) - N^(d-k-1))`` to its outgoing edges after all
weights are scaled by ``N^(d+1)``.  Here ``N = max(n, 2)`` and ``d`` is one
more than the largest priority.  The perturbation of a simple cycle is
dominated by its minimum priority and never flips the sign of a nonzero
original weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .energy import CreditMap, solve_energy
from .game import P1, GameGraph, MemorylessStrategy, dense_priority_map
from .parity import Region


@dataclass(frozen=True)
class PerturbedWeights:
    scale: int
    offset: Mapping[int, int]
    weight: Mapping[tuple[int, int], int]


def gfe_weights(g: GameGraph, within: Iterable[int] | None = None) -> PerturbedWeights:
    """Integer perturbed weights for the subgraph induced by ``within``.

    Priorities of that subgraph are densified first.  ``N`` is the number
    of states in the subgraph, raised to 2 for singleton graphs, where the
    unscaled perturbation would otherwise vanish.
    """
    states = list(g.states) if within is None else sorted(set(within))
    keep = set(states)
    if not keep:
        return PerturbedWeights(1, {}, {})
    dense = dense_priority_map(g.priority[q] for q in states)
    base = max(len(states), 2)
    d = max(dense.values()) + 1
    scale = base ** (d + 1)
    offset = {}
    for q in states:
        k = dense[g.priority[q]]
        delta = base ** (d - k) - base ** (d - k - 1)
        offset[q] = delta if k % 2 == 0 else -delta
    weight = {
        (s, t): scale * w + offset[s] for s, t, w in g.edges if s in keep and t in keep
    }
    return PerturbedWeights(scale, offset, weight)


@dataclass(frozen=True)
class GfeSolution:
    region: Region
    strategy: MemorylessStrategy
    credits: CreditMap
    weights: PerturbedWeights


def gfe_region(g: GameGraph, within: Iterable[int] | None = None) -> GfeSolution:
    """States with a memoryless good-for-energy strategy, and that strategy.

    Credits are over the scaled perturbed weights.
    """
    pw = gfe_weights(g, within)
    sol = solve_energy(g, pw.weight, within)
    return GfeSolution(sol.region, sol.strategy, sol.credits, pw)


def check_gfe(g: GameGraph, sigma: MemorylessStrategy | Mapping[int, int], q: int) -> bool:
    """Polynomial check that ``sigma`` is good-for-energy from ``q``.

    On the graph of ``sigma`` restricted to states reachable from ``q``: no
    cycle may have negative weight, and for each odd-priority state ``s`` no
    cycle through ``s`` among states of priority >= p(s) may have weight <= 0.
    """
    choice = sigma.choice if isinstance(sigma, MemorylessStrategy) else sigma
    reach = _reachable(g, choice, q)
    edges = [
        (s, t, g.weight[(s, t)])
        for s in reach
        for t in ((choice[s],) if g.owner[s] == P1 else g.succ[s])
    ]
    if _has_negative_cycle(reach, edges):
        return False
    for s in reach:
        ps = g.priority[s]
        if ps % 2 == 0:
            continue
        sub = [(a, b, w) for a, b, w in edges if g.priority[a] >= ps and g.priority[b] >= ps]
        best = _shortest_return(s, sub, len(reach))
        if best is not None and best <= 0:
            return False
    return True


def _reachable(g: GameGraph, choice, q: int) -> list[int]:
    seen = {q}
    stack = [q]
    while stack:
        s = stack.pop()
        if g.owner[s] == P1:
            if s not in choice:
                raise KeyError(f"strategy undefined at reachable state {s}")
            targets = (choice[s],)
        else:
            targets = g.succ[s]
        for t in targets:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return sorted(seen)


def _has_negative_cycle(nodes, edges) -> bool:
    # Bellman-Ford from a virtual source connected to every node.
    dist = {v: 0 for v in nodes}
    for _ in range(len(nodes)):
        changed = False
        for a, b, w in edges:
            if dist[a] + w < dist[b]:
                dist[b] = dist[a] + w
                changed = True
        if not changed:
            return False
    return True


def _shortest_return(s: int, edges, limit: int):
    """Least weight of a closed walk through ``s`` using at most ``limit`` edges.

    Assumes no negative cycles, so the optimum is a simple cycle.
    """
    inf = None
    dist = {s: 0}
    best = inf
    for _ in range(limit):
        nxt = dict(dist)
        for a, b, w in edges:
            da = dist.get(a)
            if da is None:
                continue
            if b == s:
                if best is None or da + w < best:
                    best = da + w
                continue
            if nxt.get(b) is None or da + w < nxt[b]:
                nxt[b] = da + w
        if nxt == dist:
            break
        dist = nxt
    return best
