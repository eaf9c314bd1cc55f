"""Independent brute-force helpers shared by the test modules.

None of these reuse the solvers under test.
"""

import itertools
import random
from collections import deque
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import strategies as st

from epgames.game import P1, P2, GameGraph
from epgames.generators import gen_fig1, gen_random


@pytest.fixture
def fig1():
    return gen_fig1(2, 2)


def random_games(count, seed=0, max_n=6, max_d=3, max_w=3):
    """Deterministic stream of seeded random games with varied shapes."""
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(1, max_n)
        d = rng.randint(1, max_d)
        w = rng.randint(1, max_w)
        density = rng.choice([0.2, 0.3, 0.45])
        yield gen_random(n, d, w, density, seed=seed * 100_003 + i)


def memoryless_choices(g, player, states=None):
    states = [q for q in g.states if g.owner[q] == player] if states is None else states
    for combo in itertools.product(*(g.succ[q] for q in states)):
        yield dict(zip(states, combo))


def lasso_from(g, q, sigma, tau):
    """Stem and cycle of the unique play under two memoryless strategies."""
    seen, path = {}, []
    while q not in seen:
        seen[q] = len(path)
        path.append(q)
        q = sigma[q] if g.owner[q] == P1 else tau[q]
    return path[: seen[q]], path[seen[q]:]


def brute_parity_win1(g):
    """Player-1 parity region by enumerating all memoryless strategy pairs."""
    taus = list(memoryless_choices(g, P2))
    win = set()
    for q in g.states:
        for sigma in memoryless_choices(g, P1):
            if all(min(g.priority[s] for s in lasso_from(g, q, sigma, tau)[1]) % 2 == 0 for tau in taus):
                win.add(q)
                break
    return win


def bfs_energy_credits(g, weight=None):
    """Minimum credits of the energy game as a safety game on (state, level).

    Levels run over ``0..(n-1)W`` with clamping at the top; a move below zero
    loses.  Player 2 attracts to the losing moves by backward BFS.
    """
    weight = g.weight if weight is None else weight
    top = (g.n - 1) * max((abs(w) for w in weight.values()), default=0)
    nodes = [(q, lv) for q in g.states for lv in range(top + 1)]

    def moves(q, lv):
        for t in g.succ[q]:
            nl = lv + weight[(q, t)]
            yield None if nl < 0 else (t, min(nl, top))

    pred = {v: [] for v in nodes}
    pred[None] = []
    count = {}
    for v in nodes:
        targets = list(moves(*v))
        count[v] = len(targets)
        for t in targets:
            pred[t].append(v)
    lost = {None}
    queue = deque([None])
    while queue:
        u = queue.popleft()
        for v in pred[u]:
            if v in lost:
                continue
            if g.owner[v[0]] == P2:
                lost.add(v)
                queue.append(v)
            else:
                count[v] -= 1
                if count[v] == 0:
                    lost.add(v)
                    queue.append(v)
    credit = {}
    for q in g.states:
        credit[q] = next((lv for lv in range(top + 1) if (q, lv) not in lost), None)
    return credit


def lemma2_holds(g, credits, choice, delta):
    """From (q0, v(q0)+delta) under ``choice`` every node keeps level >= v(q)+delta."""
    top = max((c for c in credits.values() if c is not None), default=0) + delta + g.max_weight * g.n
    for q0, c0 in credits.items():
        if c0 is None:
            continue
        seen = set()
        stack = [(q0, c0 + delta)]
        while stack:
            q, level = stack.pop()
            if (q, level) in seen:
                continue
            seen.add((q, level))
            if credits[q] is None or level < credits[q] + delta:
                return False
            targets = [choice[q]] if g.owner[q] == P1 else g.succ[q]
            for t in targets:
                stack.append((t, min(level + g.weight[(q, t)], top)))
    return True


def simple_cycles(g):
    graph = nx.DiGraph()
    graph.add_nodes_from(g.states)
    graph.add_edges_from((s, t) for s, t, _ in g.edges)
    return list(nx.simple_cycles(graph))


def cycle_weight(weight, cycle):
    return sum(weight[(cycle[i], cycle[(i + 1) % len(cycle)])] for i in range(len(cycle)))


def best_cycle_mean(g, q):
    """One-player mean-payoff value: best mean over cycles reachable from ``q``."""
    graph = nx.DiGraph((s, t) for s, t, _ in g.edges)
    graph.add_nodes_from(g.states)
    reach = nx.descendants(graph, q) | {q}
    return max(
        Fraction(cycle_weight(g.weight, c), len(c))
        for c in simple_cycles(g)
        if set(c) <= reach
    )


@st.composite
def games(draw, max_n=5, max_d=3, max_w=3):
    n = draw(st.integers(1, max_n))
    owner = draw(st.lists(st.sampled_from([P1, P2]), min_size=n, max_size=n))
    priority = draw(st.lists(st.integers(0, max_d - 1), min_size=n, max_size=n))
    edges = []
    for s in range(n):
        targets = draw(st.sets(st.integers(0, n - 1), min_size=1, max_size=min(n, 3)))
        for t in sorted(targets):
            edges.append((s, t, draw(st.integers(-max_w, max_w))))
    return GameGraph.build(owner, priority, edges)
