"""Text formats: EGP games, strategies, and JSON results.

An EGP document is line based; ``#`` starts a comment::

    egp 1
    states 2
    state 0 1 0
    state 1 1 1
    edge 0 1 -2
    edge 1 0 -2
    edge 1 1 1
    init 0
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .game import P1, P2, GameGraph, MemorylessStrategy, TransducerStrategy, validate_game

VERSION = 1


class EgpSyntaxError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class UnsupportedVersion(EgpSyntaxError):
    pass


@dataclass(frozen=True)
class EgpDocument:
    game: GameGraph
    init: int | None = None
    version: int = VERSION


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield number, tokens


def _ints(number: int, tokens: list[str], count: int, keyword: str) -> list[int]:
    if len(tokens) != count + 1:
        raise EgpSyntaxError(number, f"'{keyword}' takes {count} argument(s)")
    try:
        return [int(t) for t in tokens[1:]]
    except ValueError:
        raise EgpSyntaxError(number, f"non-integer argument to '{keyword}'") from None


def parse_egp(text: str) -> EgpDocument:
    lines = list(_lines(text))
    pos = 0
    last_line = text.count("\n") + 1

    def take(keyword: str):
        nonlocal pos
        if pos >= len(lines):
            raise EgpSyntaxError(last_line, f"expected '{keyword}', found end of input")
        number, tokens = lines[pos]
        if tokens[0] != keyword:
            raise EgpSyntaxError(number, f"expected '{keyword}', found '{tokens[0]}'")
        pos += 1
        return number, tokens

    number, tokens = take("egp")
    (version,) = _ints(number, tokens, 1, "egp")
    if version != VERSION:
        raise UnsupportedVersion(number, f"unsupported egp version {version}")
    number, tokens = take("states")
    (n,) = _ints(number, tokens, 1, "states")
    owner, priority = [], []
    for i in range(n):
        number, tokens = take("state")
        q, o, p = _ints(number, tokens, 3, "state")
        if q != i:
            raise EgpSyntaxError(number, f"expected state {i}, found {q}")
        if o not in (P1, P2):
            raise EgpSyntaxError(number, f"owner must be 1 or 2, found {o}")
        if p < 0:
            raise EgpSyntaxError(number, f"negative priority {p}")
        owner.append(o)
        priority.append(p)
    edges = []
    while pos < len(lines) and lines[pos][1][0] == "edge":
        number, tokens = lines[pos]
        edges.append(tuple(_ints(number, tokens, 3, "edge")))
        pos += 1
    init = None
    if pos < len(lines) and lines[pos][1][0] == "init":
        number, tokens = lines[pos]
        (init,) = _ints(number, tokens, 1, "init")
        if not 0 <= init < n:
            raise EgpSyntaxError(number, f"init state {init} out of range")
        pos += 1
    if pos < len(lines):
        number, tokens = lines[pos]
        raise EgpSyntaxError(number, f"unexpected '{tokens[0]}'")
    game = validate_game(GameGraph(tuple(owner), tuple(priority), tuple(sorted(edges))))
    return EgpDocument(game, init, version)


def serialize_egp(doc: EgpDocument | GameGraph) -> str:
    if isinstance(doc, GameGraph):
        doc = EgpDocument(doc)
    g = doc.game
    out = [f"egp {doc.version}", f"states {g.n}"]
    out += [f"state {q} {g.owner[q]} {g.priority[q]}" for q in g.states]
    out += [f"edge {s} {t} {w}" for s, t, w in sorted(g.edges)]
    if doc.init is not None:
        out.append(f"init {doc.init}")
    return "\n".join(out) + "\n"


def serialize_strategy(sigma: TransducerStrategy | MemorylessStrategy) -> str:
    """Deterministic text form of a player-1 transducer or a memoryless strategy."""
    if isinstance(sigma, MemorylessStrategy):
        out = [f"strategy {sigma.player}", "memoryless"]
        out += [f"choice {q} {t}" for q, t in sorted(sigma.choice.items())]
        return "\n".join(out) + "\n"
    out = ["strategy 1", f"memory {sigma.memory_size}", f"initial {sigma.initial_memory}"]
    out += [f"update {m} {q} {m2}" for (m, q), m2 in sorted(sigma.update.items())]
    out += [f"move {m} {q} {t}" for (m, q), t in sorted(sigma.next_move.items())]
    return "\n".join(out) + "\n"


def parse_strategy(text: str) -> TransducerStrategy | MemorylessStrategy:
    lines = list(_lines(text))
    if not lines or lines[0][1][0] != "strategy":
        raise EgpSyntaxError(lines[0][0] if lines else 1, "expected 'strategy'")
    number, tokens = lines[0]
    (player,) = _ints(number, tokens, 1, "strategy")
    if len(lines) > 1 and lines[1][1] == ["memoryless"]:
        choice = {}
        for number, tokens in lines[2:]:
            if tokens[0] != "choice":
                raise EgpSyntaxError(number, f"unexpected '{tokens[0]}'")
            q, t = _ints(number, tokens, 2, "choice")
            choice[q] = t
        return MemorylessStrategy(player, choice)
    if player != P1:
        raise EgpSyntaxError(number, "finite-memory strategies are for player 1 only")
    size = initial = None
    update, move = {}, {}
    for number, tokens in lines[1:]:
        key = tokens[0]
        if key == "memory":
            (size,) = _ints(number, tokens, 1, key)
        elif key == "initial":
            (initial,) = _ints(number, tokens, 1, key)
        elif key == "update":
            m, q, m2 = _ints(number, tokens, 3, key)
            update[(m, q)] = m2
        elif key == "move":
            m, q, t = _ints(number, tokens, 3, key)
            move[(m, q)] = t
        else:
            raise EgpSyntaxError(number, f"unexpected '{key}'")
    if size is None or initial is None:
        raise EgpSyntaxError(lines[-1][0], "missing 'memory' or 'initial'")
    return TransducerStrategy(size, initial, update, move)


def result_json(winning, credits=None, stats=None) -> str:
    """JSON result with sorted keys; ids and credits as decimal strings."""
    payload = {
        "winning": [str(q) for q in sorted(winning)],
        "credits": {str(q): str(c) for q, c in sorted((credits or {}).items()) if c is not None},
        "stats": stats or {},
    }
    return json.dumps(payload, sort_keys=True)
