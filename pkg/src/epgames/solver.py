"""Energy parity solver: recursive fixpoint over good-for-energy regions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .energy import CreditMap
from .game import P1, P2, GameGraph, dense_priority_map
from .gfe import gfe_region
from .parity import Region, attractor


class RoundingUnresolved(RuntimeError):
    def __init__(self, state: int, candidates, detail: str = ""):
        msg = f"state {state}: no certified credit among {sorted(candidates)}"
        super().__init__(msg + (f" ({detail})" if detail else ""))
        self.state = state
        self.candidates = candidates


@dataclass
class Trace:
    """Recursion statistics: one ``(depth, branch, iterations, size)`` row per call."""

    calls: list[tuple[int, int, int, int]] = field(default_factory=list)

    @property
    def max_depth(self) -> int:
        return max((c[0] for c in self.calls), default=0)

    def as_dict(self) -> dict:
        return {
            "calls": len(self.calls),
            "max_depth": self.max_depth,
            "max_iterations": max((c[2] for c in self.calls), default=0),
        }


@dataclass(frozen=True)
class EpSolution:
    winning: Region
    credits: CreditMap | None
    trace: Trace


def winning_region(g: GameGraph, trace: Trace | None = None) -> frozenset[int]:
    """Player-1 winning states of the energy parity game (finite credit)."""
    return frozenset(_solve(g, frozenset(g.states), 0, trace if trace is not None else Trace()))


def _solve(g: GameGraph, states: frozenset[int], depth: int, trace: Trace) -> frozenset[int]:
    if not states:
        return frozenset()
    dense = dense_priority_map(g.priority[q] for q in states)
    prio = {q: dense[g.priority[q]] for q in states}
    if min(prio.values()) == 0:
        a = states
        iterations = 0
        while True:
            iterations += 1
            a1 = gfe_region(g, a).region.members if a else frozenset()
            zero = [q for q in a1 if prio[q] == 0]
            x = attractor(g, P1, zero, within=a1)[0].members if a1 else frozenset()
            rest = a1 - x
            z = rest - _solve(g, rest, depth + 1, trace)
            a_next = a1 - attractor(g, P2, z, within=a1)[0].members if z else a1
            if a_next == a:
                break
            a = a_next
        trace.calls.append((depth, 0, iterations, len(states)))
        return a
    b = states
    iterations = 0
    while True:
        iterations += 1
        ones = [q for q in b if prio[q] == 1]
        y = attractor(g, P2, ones, within=b)[0].members
        sub = _solve(g, b - y, depth + 1, trace)
        b_next = b - attractor(g, P1, sub, within=b)[0].members if sub else b
        if b_next == b:
            break
        b = b_next
    trace.calls.append((depth, 1, iterations, len(states)))
    return states - b


def solve_energy_parity(g: GameGraph, with_credits: bool = True) -> EpSolution:
    trace = Trace()
    win = winning_region(g, trace)
    credits = min_initial_credit(g, win) if with_credits else None
    return EpSolution(Region(P1, win), credits, trace)


def credit_candidates(g: GameGraph, winning: frozenset[int]) -> dict[int, tuple[Fraction, list[int]]]:
    """Rational credit estimate and its integer roundings per winning state.

    The estimate is the good-for-energy credit over perturbed weights on the
    subgame induced by the winning region, divided by the weight scale.
    """
    if not winning:
        return {}
    gfe = gfe_region(g, winning)
    out = {}
    for q in sorted(winning):
        raw = gfe.credits[q]
        if raw is None:
            out[q] = (None, [])
            continue
        v = Fraction(raw, gfe.weights.scale)
        out[q] = (v, sorted({math.floor(v), math.ceil(v)}))
    return out


def min_initial_credit(g: GameGraph, winning: frozenset[int], certify=None) -> CreditMap:
    """Minimum initial credit of every winning state.

    Each winning state's credit is the floor or ceiling of its rational
    estimate, whichever ``certify(q, c)`` accepts.  By default certification
    asks the product oracle whether ``c`` is exactly the least winning credit.
    """
    if certify is None:
        certify = _oracle_certifier(g)
    credit: dict[int, int | None] = {q: None for q in g.states}
    for q, (v, candidates) in credit_candidates(g, winning).items():
        accepted = [c for c in candidates if certify(q, c)]
        if len(accepted) != 1:
            raise RoundingUnresolved(q, candidates, f"estimate {v}")
        credit[q] = accepted[0]
    return CreditMap(credit)


def _oracle_certifier(g: GameGraph):
    from .oracle import oracle_energy_parity

    def certify(q: int, c: int) -> bool:
        result = oracle_energy_parity(g)
        return result.min_credit.get(q) == c

    return certify


@dataclass(frozen=True)
class MppQuery:
    num: int = 0
    den: int = 1

    def __post_init__(self):
        if self.den < 1:
            raise ValueError("threshold denominator must be >= 1")

    @classmethod
    def parse(cls, text: str) -> MppQuery:
        frac = Fraction(text)
        return cls(frac.numerator, frac.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)


def mp_transform(g: GameGraph, query: MppQuery) -> GameGraph:
    """Integer weights ``(n+1)*(den*w - num) + 1`` of the shifted, epsilon-raised game."""
    k = g.n + 1
    return g.with_weights({(s, t): k * (query.den * w - query.num) + 1 for s, t, w in g.edges})


def solve_mp_parity(g: GameGraph, query: MppQuery = MppQuery()) -> Region:
    """States where player 1 can ensure parity and mean payoff at least the threshold."""
    return Region(P1, winning_region(mp_transform(g, query)))
