"""Solvers for energy parity games and their special cases."""

from .energy import CreditMap, extract_min_credit, solve_energy
from .game import (
    P1,
    P2,
    GameGraph,
    MemorylessStrategy,
    TransducerStrategy,
    energy_level,
    normalize_priorities,
    product_with_transducer,
    validate_game,
)
from .gfe import check_gfe, gfe_region, gfe_weights
from .oracle import enumerate_games, oracle_energy_parity, oracle_mp_value
from .parity import Region, attractor, solve_parity
from .solver import MppQuery, min_initial_credit, solve_energy_parity, solve_mp_parity
from .strategy import synthesize_p1, synthesize_p2, verify_strategy

__all__ = [
    "P1",
    "P2",
    "CreditMap",
    "GameGraph",
    "MemorylessStrategy",
    "MppQuery",
    "Region",
    "TransducerStrategy",
    "attractor",
    "check_gfe",
    "energy_level",
    "enumerate_games",
    "extract_min_credit",
    "gfe_region",
    "gfe_weights",
    "min_initial_credit",
    "normalize_priorities",
    "oracle_energy_parity",
    "oracle_mp_value",
    "product_with_transducer",
    "solve_energy",
    "solve_energy_parity",
    "solve_mp_parity",
    "solve_parity",
    "synthesize_p1",
    "synthesize_p2",
    "validate_game",
    "verify_strategy",
]
