"""Command-line front end.

Exit codes: 0 when the command succeeds and the tested property holds,
1 when the property fails (a witness is printed), 2 on input or usage
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .allocation import Allocation
from .coalition import format_coalition, members
from .core import (
    construct_core_element_3p,
    core_nonempty,
    core_nonempty_3p,
    in_core,
    is_convex_3p_closed_form,
    three_player_stats,
)
from .encouragement import encourages_on, induced_scheme, is_pmas
from .errors import GameInputError, PreconditionError
from .gamefile import format_game, load_game
from .game import Game, aggregates, is_convex, is_superadditive
from .generators import GeneratorConfig, Mode, generate
from .solutions import SolutionMethod, format_order, max_marginal_average, solve, tau


class Result:
    """Text lines, a JSON payload with the same fields, and an exit code."""

    def __init__(self, lines, payload, code=0):
        self.lines = lines
        self.payload = payload
        self.code = code


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _alloc_json(x: Allocation) -> dict:
    return {str(p): str(v) for p, v in x.items()}


def _players(mask: int) -> list[int]:
    return list(members(mask))


def _convexity_witness(game: Game, witness) -> tuple[str, dict]:
    i, a, j = witness
    b = 1 << (i - 1)
    c = 1 << (j - 1)
    lo = game.value(a | b) - game.value(a)
    hi = game.value(a | c | b) - game.value(a | c)
    text = (
        f"convexity witness: player {i} adds {lo} to {format_coalition(a)} "
        f"but {hi} to {format_coalition(a | c)}"
    )
    return text, {"player": i, "smaller": _players(a), "larger": _players(a | c),
                  "smaller_gain": str(lo), "larger_gain": str(hi)}


def cmd_check(game: Game, args) -> Result:
    convex = is_convex(game)
    sup = is_superadditive(game)
    agg = aggregates(game)
    essential = agg.T > agg.V
    lines = [f"convex: {_yn(convex.holds)}, superadditive: {_yn(sup.holds)}, essential: {_yn(essential)}"]
    payload = {"convex": convex.holds, "superadditive": sup.holds, "essential": essential,
               "convexity_witness": None, "superadditivity_witness": None}
    if not convex:
        text, data = _convexity_witness(game, convex.witness)
        lines.append(text)
        payload["convexity_witness"] = data
    if not sup:
        a, b = sup.witness
        lhs = game.value(a) + game.value(b)
        lines.append(
            f"superadditivity witness: v({format_coalition(a)}) + v({format_coalition(b)}) = {lhs}"
            f" > v({format_coalition(a | b)}) = {game.value(a | b)}"
        )
        payload["superadditivity_witness"] = {"first": _players(a), "second": _players(b),
                                              "sum": str(lhs), "union_value": str(game.value(a | b))}
    return Result(lines, payload, 0 if convex else 1)


def cmd_solve(game: Game, args) -> Result:
    method = SolutionMethod(args.method)
    payload = {"method": method.value}
    if method is SolutionMethod.TAU:
        x, diag = tau(game, check_convex=not args.unchecked)
        lines = [x.format(), f"lambda: {diag.lam}, essential: {_yn(diag.essential)}, checked: {_yn(diag.checked)}"]
        payload.update(allocation=_alloc_json(x), **{"lambda": str(diag.lam)},
                       essential=diag.essential, checked=diag.checked)
    elif method is SolutionMethod.MMA:
        x, diag = max_marginal_average(game)
        orders = [format_order(o) for o in diag.orders]
        lines = [x.format(), "L: " + " ".join(orders)]
        payload.update(allocation=_alloc_json(x), L=orders)
    else:
        x = solve(game, method)
        lines = [x.format()]
        payload.update(allocation=_alloc_json(x))
    return Result(lines, payload)


def cmd_core(game: Game, args) -> Result:
    if args.nonempty:
        ok, cert = core_nonempty(game)
        lines = [f"nonempty: {_yn(ok)}"]
        payload = {"nonempty": ok, "certificate": None}
        if cert is not None:
            lines.append(f"certificate: {cert.format()}")
            payload["certificate"] = _alloc_json(cert)
        return Result(lines, payload, 0 if ok else 1)
    x = Allocation.parse(args.test)
    report = in_core(game, x)
    lines = [f"member: {_yn(report.member)}, efficient: {_yn(report.efficient)}"]
    payload = {"member": report.member, "efficient": report.efficient, "violation": None}
    if report.violation:
        vio = report.violation
        name = format_coalition(vio.coalition)
        lines.append(f"violation: x({name}) = {vio.allocated} < v({name}) = {vio.worth}")
        payload["violation"] = {"coalition": _players(vio.coalition),
                                "allocated": str(vio.allocated), "value": str(vio.worth)}
    return Result(lines, payload, 0 if report.member else 1)


def cmd_encourage(game: Game, args) -> Result:
    report = encourages_on(game, args.method)
    lines = [f"encourages: {_yn(report.encourages)}"]
    violations = []
    for vio in report.violations:
        lines.append(
            f"player {vio.player} prefers {format_coalition(vio.coalition)}: "
            f"{vio.grand_value} < {vio.sub_value}"
        )
        violations.append({"player": vio.player, "coalition": _players(vio.coalition),
                           "grand_value": str(vio.grand_value), "sub_value": str(vio.sub_value)})
    payload = {"method": SolutionMethod(args.method).value, "encourages": report.encourages,
               "violations": violations}
    return Result(lines, payload, 0 if report.encourages else 1)


def cmd_pmas(game: Game, args) -> Result:
    report = is_pmas(induced_scheme(game, args.method))
    lines = [f"monotone: {_yn(report.monotone)}"]
    payload = {"method": SolutionMethod(args.method).value, "monotone": report.monotone,
               "violation": None}
    if report.violation:
        vio = report.violation
        lines.append(
            f"player {vio.player}: {format_coalition(vio.smaller)} -> {format_coalition(vio.larger)}: "
            f"{vio.smaller_value} > {vio.larger_value}"
        )
        payload["violation"] = {"player": vio.player, "smaller": _players(vio.smaller),
                                "larger": _players(vio.larger),
                                "smaller_value": str(vio.smaller_value),
                                "larger_value": str(vio.larger_value)}
    return Result(lines, payload, 0 if report.monotone else 1)


def cmd_construct_core3(game: Game, args) -> Result:
    if not core_nonempty_3p(game):
        st = three_player_stats(game)
        half = (st.M12 + st.M13 + st.M23) / 2
        return Result([f"core empty: S = {st.S} < {half}"],
                      {"core_empty": True, "S": str(st.S), "half_sum": str(half)}, 1)
    built = construct_core_element_3p(game)
    lines = [f"case: {built.case}"]
    payload = {"core_empty": False, "case": built.case, "a": None, "t": str(built.t)}
    if built.a is not None:
        lines.append("a: " + " ".join(str(q) for q in built.a))
        payload["a"] = [str(q) for q in built.a]
    lines += [f"t: {built.t}", f"allocation: {built.allocation.format()}"]
    payload["allocation"] = _alloc_json(built.allocation)
    return Result(lines, payload)


def cmd_stats3(game: Game, args) -> Result:
    st = three_player_stats(game)
    lines = [f"M12={st.M12} M13={st.M13} M23={st.M23} S={st.S}"]
    payload = {"M12": str(st.M12), "M13": str(st.M13), "M23": str(st.M23), "S": str(st.S),
               "core_nonempty": None, "convex": None}
    if is_superadditive(game):
        nonempty, convex = core_nonempty_3p(game), is_convex_3p_closed_form(game)
        lines.append(f"core_nonempty: {_yn(nonempty)}, convex: {_yn(convex)}")
        payload.update(core_nonempty=nonempty, convex=convex)
    return Result(lines, payload)


def cmd_gen(args) -> Result:
    config = GeneratorConfig(n=args.n, seed=args.seed, dividend_max=args.max, mode=Mode(args.mode))
    game = generate(config)
    text = format_game(game)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    payload = {"players": game.n,
               "values": [{"coalition": _players(m), "value": str(v)} for m, v in game.items()[1:]]}
    return Result(text.rstrip("\n").split("\n"), payload)


COMMANDS = {
    "check": cmd_check,
    "solve": cmd_solve,
    "core": cmd_core,
    "encourage": cmd_encourage,
    "pmas": cmd_pmas,
    "construct-core3": cmd_construct_core3,
    "stats3": cmd_stats3,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tugame", description=__doc__.splitlines()[0])
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)
    methods = [m.value for m in SolutionMethod]

    p = sub.add_parser("check", parents=[fmt], help="convexity, super-additivity, essentiality")
    p.add_argument("game")

    p = sub.add_parser("solve", parents=[fmt], help="compute a solution")
    p.add_argument("--method", choices=methods, required=True)
    p.add_argument("--unchecked", action="store_true", help="allow tau on non-convex games")
    p.add_argument("game")

    p = sub.add_parser("core", parents=[fmt], help="core membership or non-emptiness")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--test", metavar="ALLOC", help="allocation such as 1=5/3,2=5/3,3=1")
    group.add_argument("--nonempty", action="store_true")
    p.add_argument("game")

    for name, what in (("encourage", "grand-coalition encouragement"),
                       ("pmas", "population monotonicity of the induced scheme")):
        p = sub.add_parser(name, parents=[fmt], help=what)
        p.add_argument("--method", choices=methods, required=True)
        p.add_argument("game")

    p = sub.add_parser("construct-core3", parents=[fmt], help="explicit core element, 3 players")
    p.add_argument("game")
    p = sub.add_parser("stats3", parents=[fmt], help="pair surpluses M_ij and S, 3 players")
    p.add_argument("game")

    p = sub.add_parser("gen", parents=[fmt], help="generate a seeded random game")
    p.add_argument("--mode", choices=[m.value for m in Mode], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max", type=int, default=5, help="dividend/value bound (default 5)")
    p.add_argument("-o", "--output")
    return parser


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    raise TypeError(type(obj).__name__)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            result = cmd_gen(args)
        else:
            game = load_game(args.game)
            result = COMMANDS[args.command](game, args)
    except (GameInputError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    if args.format == "json":
        json.dump(result.payload, out, sort_keys=True, default=_json_default)
        out.write("\n")
    else:
        out.write("\n".join(result.lines) + "\n")
    return result.code


def main(argv=None) -> None:
    try:
        code = run(argv)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code if isinstance(exc.code, int) else 2
    sys.exit(code)
