"""Brute-force ground truth for small games.

These routines trade speed for independence from the recursive solver:
energy parity is decided on the clamped energy product, mean-payoff values
by finite-horizon value iteration, and test corpora come from exhaustive
enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .game import P1, P2, GameGraph
from .product import DEFAULT_NODE_LIMIT, EnergyProduct, TooLarge, default_cap

__all__ = [
    "OracleResult",
    "TooLarge",
    "oracle_energy_parity",
    "oracle_mp_value",
    "enumerate_games",
]


@dataclass(frozen=True)
class OracleResult:
    winning: frozenset[int]
    min_credit: dict[int, int]
    cap_used: int


def _decide(g: GameGraph, cap: int, node_limit: int):
    prod = EnergyProduct(g, cap, node_limit)
    credits = prod.min_credits((g.n - 1) * g.max_weight)
    return frozenset(credits), credits


@lru_cache(maxsize=4096)
def oracle_energy_parity(
    g: GameGraph, cap: int | None = None, node_limit: int = DEFAULT_NODE_LIMIT
) -> OracleResult:
    """Winning states and exact minimum credits via the clamped product.

    Starting from ``cap`` (default ``max(2(n-1)W, 4 n^2 d W^2)``) the cap is
    doubled until the answer is unchanged across one doubling.  Raises
    :class:`TooLarge` when a product would exceed ``node_limit`` nodes.
    """
    cap = default_cap(g) if cap is None else max(cap, 1)
    prev = _decide(g, cap, node_limit)
    while True:
        nxt = _decide(g, 2 * cap, node_limit)
        if nxt == prev:
            return OracleResult(prev[0], prev[1], cap)
        cap *= 2
        prev = nxt


def oracle_mp_value(g: GameGraph) -> dict[int, Fraction]:
    """Mean-payoff value of every state (player 1 maximizes).

    Runs ``K = 4 n^3 W`` rounds of finite-horizon value iteration and snaps
    ``v_K / K`` to the nearest rational with denominator at most ``n``.
    """
    n = g.n
    horizon = 4 * n**3 * max(g.max_weight, 1)
    out = [[(t, g.weight[(q, t)]) for t in g.succ[q]] for q in g.states]
    value = [0] * n
    for _ in range(horizon):
        value = [
            (max if g.owner[q] == P1 else min)(w + value[t] for t, w in out[q])
            for q in range(n)
        ]
    return {q: Fraction(value[q], horizon).limit_denominator(n) for q in range(n)}


def enumerate_games(
    max_states: int,
    num_priorities: int,
    max_weight: int,
    max_edges: int | None = None,
    min_states: int = 1,
) -> Iterator[GameGraph]:
    """All valid games within the bounds, in a fixed canonical order.

    Sizes ``min_states..max_states``; priorities in ``0..num_priorities-1``;
    weights in ``-max_weight..max_weight``; at most ``max_edges`` edges.
    Games are distinct as labelled graphs.
    """
    weights = range(-max_weight, max_weight + 1)
    for n in range(min_states, max_states + 1):
        budget = n * n if max_edges is None else max_edges
        out_choices = [
            [c for r in range(1, n + 1) for c in itertools.combinations(range(n), r)]
            for _ in range(n)
        ]
        for outs in itertools.product(*out_choices):
            pairs = [(s, t) for s, targets in enumerate(outs) for t in targets]
            if len(pairs) > budget:
                continue
            for owner in itertools.product((P1, P2), repeat=n):
                for priority in itertools.product(range(num_priorities), repeat=n):
                    for ws in itertools.product(weights, repeat=len(pairs)):
                        yield GameGraph(
                            owner,
                            priority,
                            tuple((s, t, w) for (s, t), w in zip(pairs, ws)),
                        )
