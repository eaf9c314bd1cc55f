"""Strategy synthesis and verification.

Player 1 strategies come from the clamped energy product: a memoryless
winning strategy there becomes a finite-memory strategy in the game, whose
memory remembers the last product node (previous state and its energy
level).  Player 2 strategies are memoryless and certified by the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .game import P1, P2, GameGraph, MemorylessStrategy, TransducerStrategy, product_with_transducer
from .oracle import oracle_energy_parity
from .product import DEFAULT_NODE_LIMIT, EnergyProduct, default_cap
from .solver import winning_region


class CapUnstable(RuntimeError):
    pass


class CertificationFailed(RuntimeError):
    def __init__(self, state: int):
        super().__init__(f"player-2 strategy does not certify state {state}")
        self.state = state


@dataclass(frozen=True)
class Synthesis:
    strategy: TransducerStrategy
    credit: int
    cap: int


def _stable_product(g: GameGraph, cap, max_doublings, node_limit) -> EnergyProduct:
    limit = (g.n - 1) * g.max_weight
    cap = default_cap(g) if cap is None else cap
    prod = EnergyProduct(g, cap, node_limit)
    for _ in range(max_doublings):
        bigger = EnergyProduct(g, 2 * cap, node_limit)
        if bigger.min_credits(limit) == prod.min_credits(limit):
            return prod
        prod, cap = bigger, 2 * cap
    raise CapUnstable(f"winning set not stable after {max_doublings} doublings (cap {cap})")


def synthesize_p1(
    g: GameGraph,
    q0: int,
    cap: int | None = None,
    max_doublings: int = 6,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> Synthesis | None:
    """Finite-memory winning strategy from ``q0`` with least credit, or None if losing.

    Memory value 0 is the start; every other value stands for a product node
    ``(q, level)`` and means "the previous state was ``q`` at that level".
    When the choice never depends on the level the strategy is collapsed to a
    memoryless one.
    """
    prod = _stable_product(g, cap, max_doublings, node_limit)
    credits = prod.min_credits((g.n - 1) * g.max_weight)
    if q0 not in credits:
        return None
    c = credits[q0]
    _, choose = prod.solution

    def move(q, level):
        return prod.unpack(choose[prod.node(q, level)])[0]

    memory = {None: 0}
    update, next_move = {}, {}
    frontier = [(None, q0, c)]
    while frontier:
        prev, q, level = frontier.pop()
        m = memory[prev]
        here = (q, level)
        if here not in memory:
            memory[here] = len(memory)
            targets = [move(q, level)] if g.owner[q] == P1 else g.succ[q]
            for t in targets:
                frontier.append((here, t, prod.step(level, q, t)))
        update[(m, q)] = memory[here]
        if g.owner[q] == P1:
            next_move[(m, q)] = move(q, level)

    by_state: dict[int, set[int]] = {}
    for (m, q), t in next_move.items():
        by_state.setdefault(q, set()).add(t)
    if all(len(ts) == 1 for ts in by_state.values()):
        choice = {q: next(iter(ts)) for q, ts in sorted(by_state.items())}
        sigma = TransducerStrategy.from_memoryless(g, MemorylessStrategy(P1, choice))
    else:
        sigma = TransducerStrategy(len(memory), 0, dict(sorted(update.items())), dict(sorted(next_move.items())))
    return Synthesis(sigma, c, prod.cap)


def restrict(g: GameGraph, pi: MemorylessStrategy) -> GameGraph:
    """Game graph with the moves of ``pi``'s player fixed where it is defined."""
    return GameGraph(
        g.owner,
        g.priority,
        tuple(e for e in g.edges if e[0] not in pi.choice or pi.choice[e[0]] == e[1]),
    )


def synthesize_p2(
    g: GameGraph,
    winning: frozenset[int] | None = None,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> MemorylessStrategy:
    """Memoryless spoiling strategy on player-2 states outside player 1's region.

    States are fixed one at a time.  The first candidate is the product
    strategy's choice at the highest level player 2 wins, then the remaining
    successors in order; a candidate is kept once the oracle confirms that
    player 1 still wins nowhere on the losing region.  Clamping at the cap
    can make the top-level choice wrong, hence the fallback.
    """
    if winning is None:
        winning = winning_region(g)
    losing = frozenset(q for q in g.states if q not in winning)
    if not losing:
        return MemorylessStrategy(P2, {})
    cap = oracle_energy_parity(g, node_limit=node_limit).cap_used
    prod = EnergyProduct(g, cap, node_limit)
    won_by_p1, choose = prod.solution
    choice = {}
    current = g
    for q in sorted(losing):
        if g.owner[q] != P2:
            continue
        level = next((lv for lv in range(cap, -1, -1) if not won_by_p1[prod.node(q, lv)]), None)
        if level is None:
            raise CertificationFailed(q)
        hint = prod.unpack(choose[prod.node(q, level)])[0]
        if len(g.succ[q]) == 1:
            choice[q] = hint
            continue
        for t in [hint] + [t for t in g.succ[q] if t != hint]:
            trial = restrict(current, MemorylessStrategy(P2, {q: t}))
            if not oracle_energy_parity(trial, node_limit=node_limit).winning & losing:
                choice[q], current = t, trial
                break
        else:
            raise CertificationFailed(q)
    pi = MemorylessStrategy(P2, choice)
    check = oracle_energy_parity(restrict(g, pi), node_limit=node_limit)
    for q in losing:
        if q in check.winning:
            raise CertificationFailed(q)
    return pi


@dataclass(frozen=True)
class Lasso:
    """Stem followed by a cycle repeated forever; nodes are (memory, state) pairs."""

    stem: list[tuple[int, int]]
    cycle: list[tuple[int, int]]
    reason: str

    def states(self) -> tuple[list[int], list[int]]:
        return [q for _, q in self.stem], [q for _, q in self.cycle]


@dataclass(frozen=True)
class Verdict:
    passed: bool
    witness: Lasso | None = None

    def __bool__(self) -> bool:
        return self.passed


def verify_strategy(g: GameGraph, sigma: TransducerStrategy, q0: int, c0: int) -> Verdict:
    """Check that ``sigma`` wins energy parity from ``q0`` with credit ``c0``.

    Fails on a reachable negative cycle of the product, on a reachable node
    whose worst-case energy drops below zero, or on a reachable cycle whose
    minimum priority is odd.
    """
    sigma.check(g)
    prod = product_with_transducer(g, sigma, q0)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(prod)))
    for u, outs in enumerate(prod.succ):
        for v, w in outs:
            graph.add_edge(u, v, weight=w)

    def lasso(stem_to: int, cycle: list[int], reason: str) -> Verdict:
        stem = nx.shortest_path(graph, 0, stem_to)[:-1]
        return Verdict(False, Lasso([prod.nodes[i] for i in stem], [prod.nodes[i] for i in cycle], reason))

    try:
        dist = nx.single_source_bellman_ford_path_length(graph, 0)
    except nx.NetworkXUnbounded:
        cycle = nx.find_negative_cycle(graph, 0)[:-1]
        return lasso(cycle[0], cycle, "energy")
    low = min(dist, key=lambda v: (dist[v], v))
    if c0 + dist[low] < 0:
        path = nx.bellman_ford_path(graph, 0, low)
        walk, seen = list(path), {}
        for i, v in enumerate(walk):
            seen.setdefault(v, i)
        v = walk[-1]
        while True:
            v = prod.succ[v][0][0]
            if v in seen:
                break
            seen[v] = len(walk)
            walk.append(v)
        start = seen[v]
        return Verdict(
            False,
            Lasso([prod.nodes[i] for i in walk[:start]], [prod.nodes[i] for i in walk[start:]], "energy"),
        )

    for p in sorted({pr for pr in prod.priority if pr % 2 == 1}):
        sub = graph.subgraph([v for v in graph if prod.priority[v] >= p])
        for comp in nx.strongly_connected_components(sub):
            hits = sorted(v for v in comp if prod.priority[v] == p)
            if not hits:
                continue
            x = hits[0]
            if len(comp) == 1 and not graph.has_edge(x, x):
                continue
            inner = sub.subgraph(comp)
            if graph.has_edge(x, x):
                cycle = [x]
            else:
                back = min((nx.shortest_path(inner, y, x) for y in inner.successors(x)), key=len)
                cycle = [x] + back[:-1]
            return lasso(x, cycle, "parity")
    return Verdict(True)
