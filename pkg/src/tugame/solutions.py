"""Solution functions: marginal vectors, Shapley value, tau-value and the
max-marginal-average rule.

Permutations are tuples of player ids in one-line notation; the leftmost
player joins first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial, lcm
from typing import Sequence

from .allocation import Allocation
from .coalition import bit, format_coalition, is_subset
from .errors import CapExceeded, GameInputError, PreconditionError
from .game import Game, aggregates, require_convex

PERMUTATION_CAP = 10
SUBSET_CAP = 16

Order = tuple[int, ...]


class SolutionMethod(str, enum.Enum):
    SHAPLEY = "shapley"
    TAU = "tau"
    MMA = "mma"


def parse_order(text: str) -> Order:
    """``"231"`` -> (2, 3, 1); ids above 9 need separators (``"10 2 1"``)."""
    text = text.strip()
    if any(c in text for c in " ,"):
        parts = text.replace(",", " ").split()
    else:
        parts = list(text)
    if not parts or not all(p.isdigit() for p in parts):
        raise GameInputError(f"malformed permutation {text!r}")
    return tuple(int(p) for p in parts)


def format_order(order: Sequence[int]) -> str:
    if all(p < 10 for p in order):
        return "".join(map(str, order))
    return " ".join(map(str, order))


def _check_order(order: Sequence[int], carrier: int | None = None) -> None:
    mask = 0
    for p in order:
        if p < 1 or mask & bit(p):
            raise GameInputError(f"{format_order(order)} is not a permutation")
        mask |= bit(p)
    if carrier is not None and mask != carrier:
        raise GameInputError(
            f"{format_order(order)} does not permute {format_coalition(carrier)}"
        )


def predecessors(order: Sequence[int], player: int) -> int:
    """Coalition of the players strictly before ``player``."""
    _check_order(order)
    mask = 0
    for p in order:
        if p == player:
            return mask
        mask |= bit(p)
    raise GameInputError(f"player {player} does not appear in {format_order(order)}")


def flatten(order: Sequence[int], mask: int) -> Order:
    """Drop the players outside ``mask``, keeping the relative order."""
    _check_order(order)
    present = 0
    for p in order:
        present |= bit(p)
    if not is_subset(mask, present):
        raise GameInputError(
            f"{format_coalition(mask)} is not contained in {format_order(order)}"
        )
    return tuple(p for p in order if mask & bit(p))


def _scaled_values(game: Game) -> tuple[dict[int, int], int]:
    # Integer image of the value table: enumeration loops stay in int arithmetic.
    den = 1
    for val in game._values.values():
        den = lcm(den, val.denominator)
    return {m: val.numerator * (den // val.denominator) for m, val in game._values.items()}, den


def _marginals_scaled(v: dict[int, int], order: Sequence[int]) -> list[int]:
    out = []
    mask = 0
    for p in order:
        nxt = mask | (1 << (p - 1))
        out.append(v[nxt] - v[mask])
        mask = nxt
    return out


def marginal_vector(game: Game, order: Sequence[int]) -> Allocation:
    _check_order(order, game.carrier)
    v = game._values
    payoff = {}
    mask = 0
    for p in order:
        nxt = mask | bit(p)
        payoff[p] = v[nxt] - v[mask]
        mask = nxt
    return Allocation(payoff)


def _all_orders(game: Game, cap: int, alternative: str | None = None):
    if game.size > cap:
        hint = f"; use {alternative}" if alternative else ""
        raise CapExceeded(f"{game.size} players exceeds the permutation cap of {cap}{hint}")
    return permutations(game.players)


def shapley_by_permutations(game: Game) -> Allocation:
    """Average of the marginal vectors over all n! join orders."""
    orders = _all_orders(game, PERMUTATION_CAP, "shapley_by_subsets")
    v, den = _scaled_values(game)
    players = game.players
    index = {p: k for k, p in enumerate(players)}
    totals = [0] * len(players)
    count = 0
    for order in orders:
        for p, m in zip(order, _marginals_scaled(v, order)):
            totals[index[p]] += m
        count += 1
    return Allocation({p: Fraction(totals[index[p]], den * count) for p in players})


def shapley_by_subsets(game: Game) -> Allocation:
    """Shapley value via coalition weights |A|! (k-1-|A|)! / k!."""
    k = game.size
    if k > SUBSET_CAP:
        raise CapExceeded(f"{k} players exceeds the subset cap of {SUBSET_CAP}")
    v, den = _scaled_values(game)
    weight = [factorial(s) * factorial(k - 1 - s) for s in range(k)]
    totals = {}
    N = game.carrier
    for p in game.players:
        b = bit(p)
        rest = N & ~b
        acc = 0
        sub = 0
        while True:
            acc += weight[bin(sub).count("1")] * (v[sub | b] - v[sub])
            if sub == rest:
                break
            sub = (sub - rest) & rest
        totals[p] = Fraction(acc, den * factorial(k))
    return Allocation(totals)


@dataclass(frozen=True)
class TauDiagnostics:
    lam: Fraction
    essential: bool
    checked: bool = True


def tau(game: Game, check_convex: bool = True) -> tuple[Allocation, TauDiagnostics]:
    """Tau-value of a convex game.

    With ``check_convex=False`` the formula is applied to any game with
    M > V and the diagnostics record the result as unchecked.
    """
    if check_convex:
        require_convex(game)
    agg = aggregates(game)
    single = {p: game.value(bit(p)) for p in game.players}
    if agg.T == agg.V:
        return Allocation(single), TauDiagnostics(Fraction(1), False, check_convex)
    if agg.M == agg.V:
        raise PreconditionError("tau-value undefined: M = V but T != V")
    lam = (agg.M - agg.T) / (agg.M - agg.V)
    payoff = {p: lam * single[p] + (1 - lam) * agg.top_marginals[p] for p in game.players}
    return Allocation(payoff), TauDiagnostics(lam, agg.T > agg.V, check_convex)


@dataclass(frozen=True)
class MmaDiagnostics:
    """Orders whose marginal vector has the largest squared norm."""

    orders: tuple[Order, ...]


def max_marginal_average(game: Game) -> tuple[Allocation, MmaDiagnostics]:
    orders = _all_orders(game, PERMUTATION_CAP)
    v, den = _scaled_values(game)
    players = game.players
    index = {p: k for k, p in enumerate(players)}
    best = None
    chosen: list[Order] = []
    sums = [0] * len(players)
    for order in orders:
        vec = _marginals_scaled(v, order)
        norm = sum(m * m for m in vec)
        if best is None or norm > best:
            best = norm
            chosen = []
            sums = [0] * len(players)
        if norm == best:
            chosen.append(order)
            for p, m in zip(order, vec):
                sums[index[p]] += m
    payoff = {p: Fraction(sums[index[p]], den * len(chosen)) for p in players}
    return Allocation(payoff), MmaDiagnostics(tuple(chosen))


def solve(game: Game, method: SolutionMethod | str) -> Allocation:
    method = SolutionMethod(method)
    if method is SolutionMethod.SHAPLEY:
        return shapley_by_subsets(game)
    if method is SolutionMethod.TAU:
        return tau(game)[0]
    return max_marginal_average(game)[0]

