"""Command-line front end: ``epgames <command> ...``.

Exit status is 0 on success, 1 when a verification fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import sys

from .egp import (
    EgpDocument,
    parse_egp,
    parse_strategy,
    result_json,
    serialize_egp,
    serialize_strategy,
)
from .energy import solve_energy
from .game import GameError, MemorylessStrategy, TransducerStrategy
from .generators import gen_fig1, gen_random
from .oracle import oracle_energy_parity
from .parity import solve_parity
from .product import TooLarge
from .solver import MppQuery, RoundingUnresolved, solve_energy_parity, solve_mp_parity
from .strategy import (
    CapUnstable,
    CertificationFailed,
    restrict,
    synthesize_p1,
    synthesize_p2,
    verify_strategy,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str, out) -> None:
    if path is None or path == "-":
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _state(args, doc: EgpDocument) -> int:
    q = args.state if args.state is not None else (doc.init if doc.init is not None else 0)
    if not 0 <= q < doc.game.n:
        raise UsageError(f"state {q} out of range")
    return q


def _report(args, out, winning, credits=None, stats=None) -> None:
    if args.json:
        out.write(result_json(winning, credits, stats) + "\n")
        return
    out.write(f"winning {sorted(winning)}\n")
    if credits is not None:
        shown = {q: c for q, c in sorted(credits.items()) if c is not None}
        out.write("credits {" + ", ".join(f"{q}: {c}" for q, c in shown.items()) + "}\n")


def cmd_solve(args, out) -> int:
    g = parse_egp(_read(args.input)).game
    stats = {"edges": len(g.edges), "objective": args.objective, "states": g.n}
    credits = None
    if args.objective == "parity":
        winning = solve_parity(g).win1.members
    elif args.objective == "energy":
        sol = solve_energy(g)
        winning, credits = sol.region.members, dict(sol.credits.items())
    elif args.objective == "energy-parity":
        sol = solve_energy_parity(g, with_credits=not args.no_credits)
        winning = sol.winning.members
        credits = None if sol.credits is None else dict(sol.credits.items())
        stats.update(sol.trace.as_dict())
    else:
        query = MppQuery.parse(args.threshold)
        winning = solve_mp_parity(g, query).members
        stats["threshold"] = f"{query.num}/{query.den}"
    _report(args, out, winning, credits, stats)
    return EXIT_OK


def cmd_credit(args, out) -> int:
    doc = parse_egp(_read(args.input))
    sol = solve_energy_parity(doc.game)
    credits = dict(sol.credits.items())
    if args.state is not None:
        q = _state(args, doc)
        c = credits[q]
        if args.json:
            out.write(result_json([q] if c is not None else [], {q: c}) + "\n")
        else:
            out.write(f"{q}: {'unwinnable' if c is None else c}\n")
        return EXIT_OK
    _report(args, out, sol.winning.members, credits)
    return EXIT_OK


def cmd_synthesize(args, out) -> int:
    doc = parse_egp(_read(args.input))
    g = doc.game
    if args.player == 1:
        q = _state(args, doc)
        result = synthesize_p1(g, q)
        if result is None:
            sys.stderr.write(f"player 1 loses from state {q}\n")
            return EXIT_FAIL
        sys.stderr.write(f"credit {result.credit}\n")
        _write(args.out, serialize_strategy(result.strategy), out)
    else:
        _write(args.out, serialize_strategy(synthesize_p2(g)), out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    doc = parse_egp(_read(args.input))
    g = doc.game
    sigma = parse_strategy(_read(args.strategy))
    if isinstance(sigma, MemorylessStrategy) and sigma.player == 2:
        sigma.check(g)
        check = oracle_energy_parity(restrict(g, sigma))
        q = _state(args, doc)
        if q in check.winning:
            out.write(f"fail: player 1 still wins from {q} with credit {check.min_credit[q]}\n")
            return EXIT_FAIL
        out.write("pass\n")
        return EXIT_OK
    if isinstance(sigma, MemorylessStrategy):
        sigma = TransducerStrategy.from_memoryless(g, sigma)
    if args.credit is None:
        raise UsageError("--credit is required for player-1 strategies")
    verdict = verify_strategy(g, sigma, _state(args, doc), args.credit)
    if verdict.passed:
        out.write("pass\n")
        return EXIT_OK
    stem, cycle = verdict.witness.states()
    out.write(f"fail ({verdict.witness.reason})\nstem {stem}\ncycle {cycle}\n")
    return EXIT_FAIL


def cmd_oracle(args, out) -> int:
    g = parse_egp(_read(args.input)).game
    res = oracle_energy_parity(g, cap=args.cap)
    _report(args, out, res.winning, res.min_credit, {"cap_used": res.cap_used})
    return EXIT_OK


def cmd_gen(args, out) -> int:
    if args.family == "fig1":
        g = gen_fig1(args.n, args.W)
    else:
        g = gen_random(args.n, args.d, args.W, args.density, args.seed)
    _write(args.out, serialize_egp(g), out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="epgames", description="Energy parity game solver")
    sub = parser.add_subparsers(dest="command", required=True)

    def game_cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", "-i", default="-", help="EGP file, '-' for stdin")
        return p

    p = game_cmd("solve", "winning region for an objective")
    p.add_argument(
        "--objective",
        choices=["parity", "energy", "energy-parity", "mp-parity"],
        default="energy-parity",
    )
    p.add_argument("--threshold", default="0", help="mean-payoff threshold NUM/DEN")
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-credits", action="store_true", help="skip minimum credits")
    p.set_defaults(func=cmd_solve)

    p = game_cmd("credit", "minimum initial credits for energy parity")
    p.add_argument("--state", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_credit)

    p = game_cmd("synthesize", "winning strategy")
    p.add_argument("--player", type=int, choices=[1, 2], default=1)
    p.add_argument("--state", type=int)
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_synthesize)

    p = game_cmd("verify", "check a strategy file")
    p.add_argument("--strategy", required=True)
    p.add_argument("--state", type=int)
    p.add_argument("--credit", type=int)
    p.set_defaults(func=cmd_verify)

    p = game_cmd("oracle", "brute-force product oracle")
    p.add_argument("--cap", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("--family", choices=["fig1", "random"], required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-W", type=int, default=1)
    p.add_argument("-d", type=int, default=2)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except (GameError, UsageError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (TooLarge, RoundingUnresolved, CapUnstable, CertificationFailed) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
