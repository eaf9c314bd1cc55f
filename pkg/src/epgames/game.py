"""Game graphs with priorities and integer edge weights.

States are dense integers ``0..n-1``. Each state has an owner (player 1 or
player 2) and a priority; each edge carries an integer weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

P1 = 1
P2 = 2


def opponent(player: int) -> int:
    return P2 if player == P1 else P1


class GameError(ValueError):
    """Base class for malformed games and strategies."""


class DeadlockState(GameError):
    def __init__(self, state: int):
        super().__init__(f"state {state} has no outgoing edge")
        self.state = state


class BadEdge(GameError):
    pass


class DuplicateEdge(GameError):
    pass


class NotAPath(GameError):
    pass


class Arena:
    """Plain adjacency structure shared by parity solving and products.

    ``owner`` and ``priority`` are per-node lists, ``succ``/``pred`` are
    lists of successor/predecessor lists.  No weights.
    """

    __slots__ = ("owner", "priority", "succ", "pred")

    def __init__(self, owner: list[int], priority: list[int], succ: list[list[int]]):
        self.owner = owner
        self.priority = priority
        self.succ = succ
        pred: list[list[int]] = [[] for _ in succ]
        for u, targets in enumerate(succ):
            for v in targets:
                pred[v].append(u)
        self.pred = pred

    def __len__(self) -> int:
        return len(self.owner)


@dataclass(frozen=True)
class GameGraph:
    owner: tuple[int, ...]
    priority: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...] = field(default=())

    @classmethod
    def build(
        cls,
        owner: Sequence[int],
        priority: Sequence[int],
        edges: Iterable[tuple[int, int, int]],
    ) -> GameGraph:
        """Construct and validate; edges are stored sorted by (src, dst)."""
        edges = tuple(sorted((int(s), int(t), int(w)) for s, t, w in edges))
        return validate_game(cls(tuple(owner), tuple(priority), edges))

    @property
    def n(self) -> int:
        return len(self.owner)

    @property
    def states(self) -> range:
        return range(len(self.owner))

    @cached_property
    def weight(self) -> dict[tuple[int, int], int]:
        return {(s, t): w for s, t, w in self.edges}

    @cached_property
    def succ(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.owner]
        for s, t, _ in self.edges:
            out[s].append(t)
        return tuple(tuple(sorted(x)) for x in out)

    @cached_property
    def pred(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in self.owner]
        for s, t, _ in self.edges:
            inc[t].append(s)
        return tuple(tuple(sorted(x)) for x in inc)

    @cached_property
    def arena(self) -> Arena:
        return Arena(list(self.owner), list(self.priority), [list(x) for x in self.succ])

    @property
    def max_weight(self) -> int:
        """W: largest absolute edge weight."""
        return max((abs(w) for _, _, w in self.edges), default=0)

    @property
    def num_priorities(self) -> int:
        return len(set(self.priority))

    def states_of(self, player: int) -> list[int]:
        return [q for q in self.states if self.owner[q] == player]

    def with_weights(self, weight: Mapping[tuple[int, int], int]) -> GameGraph:
        return GameGraph(
            self.owner,
            self.priority,
            tuple((s, t, int(weight[(s, t)])) for s, t, _ in self.edges),
        )

    def with_priorities(self, priority: Sequence[int]) -> GameGraph:
        return GameGraph(self.owner, tuple(priority), self.edges)

    def subgame(self, keep: Iterable[int]) -> tuple[GameGraph, list[int]]:
        """Induced subgraph on ``keep``, renumbered densely.

        Returns the subgame and the list mapping new ids to old ids.  The
        caller is responsible for ``keep`` inducing a game graph (every kept
        state retains a successor); this is checked.
        """
        old = sorted(set(keep))
        new_id = {q: i for i, q in enumerate(old)}
        edges = tuple(
            (new_id[s], new_id[t], w) for s, t, w in self.edges if s in new_id and t in new_id
        )
        sub = GameGraph(
            tuple(self.owner[q] for q in old),
            tuple(self.priority[q] for q in old),
            edges,
        )
        return validate_game(sub), old


def validate_game(raw: GameGraph) -> GameGraph:
    n = len(raw.owner)
    if len(raw.priority) != n:
        raise GameError(f"{n} owners but {len(raw.priority)} priorities")
    if n < 1:
        raise GameError("a game needs at least one state")
    for q in range(n):
        if raw.owner[q] not in (P1, P2):
            raise GameError(f"state {q}: owner must be 1 or 2, got {raw.owner[q]}")
        if raw.priority[q] < 0:
            raise GameError(f"state {q}: negative priority {raw.priority[q]}")
    seen = set()
    has_out = [False] * n
    for s, t, _ in raw.edges:
        if not (0 <= s < n and 0 <= t < n):
            raise BadEdge(f"edge ({s},{t}) has an endpoint outside 0..{n - 1}")
        if (s, t) in seen:
            raise DuplicateEdge(f"edge ({s},{t}) appears twice")
        seen.add((s, t))
        has_out[s] = True
    for q in range(n):
        if not has_out[q]:
            raise DeadlockState(q)
    return raw


def energy_level(g: GameGraph, prefix: Sequence[int], weight=None) -> int:
    """Sum of edge weights along ``prefix``; a single state has level 0."""
    if not prefix:
        raise NotAPath("empty prefix")
    weight = g.weight if weight is None else weight
    total = 0
    for s, t in zip(prefix, prefix[1:]):
        try:
            total += weight[(s, t)]
        except KeyError:
            raise NotAPath(f"({s},{t}) is not an edge") from None
    return total


def normalize_priorities(g: GameGraph) -> tuple[GameGraph, dict[int, int]]:
    """Remap priorities onto a dense range starting at 0 or 1.

    Order and parity are preserved; adjacent distinct priorities of equal
    parity stay two apart, so ``{3, 5}`` becomes ``{1, 3}``.
    """
    mapping = dense_priority_map(g.priority)
    if all(k == v for k, v in mapping.items()):
        return g, mapping
    return g.with_priorities([mapping[p] for p in g.priority]), mapping


def dense_priority_map(priorities: Iterable[int]) -> dict[int, int]:
    mapping: dict[int, int] = {}
    prev = None
    for p in sorted(set(priorities)):
        if prev is None:
            mapping[p] = p % 2
        else:
            mapping[p] = mapping[prev] + (1 if (p - prev) % 2 else 2)
        prev = p
    return mapping


@dataclass(frozen=True)
class MemorylessStrategy:
    """Successor choice for the states of one player."""

    player: int
    choice: Mapping[int, int]

    def __call__(self, q: int) -> int:
        return self.choice[q]

    def check(self, g: GameGraph) -> None:
        for q, t in self.choice.items():
            if g.owner[q] != self.player:
                raise GameError(f"strategy of player {self.player} defined at state {q}")
            if (q, t) not in g.weight:
                raise GameError(f"strategy chooses ({q},{t}), which is not an edge")


@dataclass(frozen=True)
class TransducerStrategy:
    """Finite-memory strategy for player 1.

    Memory values are ``0..memory_size-1``.  In memory ``m`` at a player-1
    state ``q`` the strategy moves to ``next_move[(m, q)]``; in every state
    memory becomes ``update[(m, q)]``.  Only entries reachable from the
    initial memory need to be present.
    """

    memory_size: int
    initial_memory: int
    update: Mapping[tuple[int, int], int]
    next_move: Mapping[tuple[int, int], int]

    @property
    def is_memoryless(self) -> bool:
        return self.memory_size == 1

    @classmethod
    def from_memoryless(cls, g: GameGraph, sigma: MemorylessStrategy) -> TransducerStrategy:
        return cls(
            1,
            0,
            {(0, q): 0 for q in g.states},
            {(0, q): t for q, t in sigma.choice.items()},
        )

    def check(self, g: GameGraph) -> None:
        if self.memory_size < 1 or not 0 <= self.initial_memory < self.memory_size:
            raise GameError("initial memory outside the memory set")
        for (m, q), t in self.next_move.items():
            if g.owner[q] != P1:
                raise GameError(f"next move defined at player-2 state {q}")
            if (q, t) not in g.weight:
                raise GameError(f"next move ({q},{t}) is not an edge")
        for (m, q), m2 in self.update.items():
            if not 0 <= m2 < self.memory_size:
                raise GameError(f"update ({m},{q}) -> {m2} leaves the memory set")


@dataclass
class ProductGraph:
    """Reachable part of a game graph times a transducer.

    ``nodes[i]`` is the (memory, state) pair of node ``i``; node 0 is the
    initial node.  ``succ[i]`` lists (node, weight) pairs.
    """

    nodes: list[tuple[int, int]]
    succ: list[list[tuple[int, int]]]
    priority: list[int]

    def __len__(self) -> int:
        return len(self.nodes)


class MissingTransducerEntry(GameError):
    pass


def product_with_transducer(g: GameGraph, sigma: TransducerStrategy, q0: int) -> ProductGraph:
    index: dict[tuple[int, int], int] = {}
    nodes: list[tuple[int, int]] = []
    succ: list[list[tuple[int, int]]] = []
    stack = []

    def visit(node):
        i = index.get(node)
        if i is None:
            i = index[node] = len(nodes)
            nodes.append(node)
            succ.append([])
            stack.append(i)
        return i

    visit((sigma.initial_memory, q0))
    while stack:
        i = stack.pop()
        m, q = nodes[i]
        try:
            m2 = sigma.update[(m, q)]
            targets = [sigma.next_move[(m, q)]] if g.owner[q] == P1 else g.succ[q]
        except KeyError:
            raise MissingTransducerEntry(f"transducer undefined at memory {m}, state {q}") from None
        succ[i] = [(visit((m2, t)), g.weight[(q, t)]) for t in targets]
    return ProductGraph(nodes, succ, [g.priority[q] for _, q in nodes])
