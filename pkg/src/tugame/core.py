"""Core membership, core non-emptiness and the 3-player closed forms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .allocation import Allocation
from .coalition import bit, format_coalition, indicator, is_subset, subsets
from .errors import CapExceeded, GameInputError, PreconditionError
from .fme import feasible_point
from .game import Game, Number, is_convex, is_superadditive, require_three_players, to_rational
from .solutions import marginal_vector

CORE_FEASIBILITY_CAP = 5


@dataclass(frozen=True)
class CoreViolation:
    coalition: int
    allocated: Fraction
    worth: Fraction


@dataclass(frozen=True)
class CoreReport:
    member: bool
    efficient: bool
    violation: Optional[CoreViolation] = None

    def __bool__(self):
        return self.member


def in_core(game: Game, x: Allocation) -> CoreReport:
    """Check x(N) = v(N) and x(A) >= v(A) for every coalition.

    The reported violation is the violated coalition with the smallest
    bitmask.
    """
    if x.carrier != game.carrier:
        raise GameInputError(
            f"allocation covers {format_coalition(x.carrier)}, game has {format_coalition(game.carrier)}"
        )
    efficient = x.total() == game.value(game.carrier)
    for mask in subsets(game.carrier, include_empty=False):
        have = x.total(mask)
        worth = game.value(mask)
        if have < worth:
            return CoreReport(False, efficient, CoreViolation(mask, have, worth))
    return CoreReport(efficient, efficient)


def core_nonempty(game: Game) -> tuple[bool, Optional[Allocation]]:
    """Decide whether the core is nonempty; return a core element if so.

    Convex games short-cut to the marginal vector of the ascending order.
    Otherwise the system {x(N) = v(N), x(A) >= v(A)} is solved exactly by
    substituting the efficiency equation for the last player and running
    Fourier-Motzkin elimination on the rest.
    """
    if game.size > CORE_FEASIBILITY_CAP:
        raise CapExceeded(
            f"{game.size} players exceeds the core feasibility cap of {CORE_FEASIBILITY_CAP}"
        )
    if is_convex(game):
        return True, marginal_vector(game, game.players)

    players = game.players
    *free, last = players
    grand = game.carrier
    total = game.value(grand)
    if not free:
        return True, Allocation({last: total})

    rows = []
    for mask in subsets(grand, include_empty=False):
        if mask == grand:
            continue
        worth = game.value(mask)
        if mask & bit(last):
            # x(A) = v(N) - sum of the free players outside A
            coeffs = [0 if mask & bit(p) else -1 for p in free]
            rows.append((coeffs, worth - total))
        else:
            rows.append(([1 if mask & bit(p) else 0 for p in free], worth))
    point = feasible_point(rows, len(free))
    if point is None:
        return False, None
    payoff = dict(zip(free, point))
    payoff[last] = total - sum(point, Fraction(0))
    cert = Allocation(payoff)
    assert in_core(game, cert).member
    return True, cert


@dataclass(frozen=True)
class BalancedWeighting:
    sets: tuple[int, ...]
    weights: tuple[Fraction, ...]

    def __init__(self, sets: Sequence[int], weights: Sequence[Number]):
        if len(sets) != len(weights):
            raise GameInputError("sets and weights differ in length")
        ws = tuple(to_rational(w) for w in weights)
        if any(s == 0 for s in sets):
            raise GameInputError("balanced weightings use nonempty coalitions")
        if any(w <= 0 for w in ws):
            raise GameInputError("weights must be positive")
        object.__setattr__(self, "sets", tuple(sets))
        object.__setattr__(self, "weights", ws)


def check_balancing_inequality(game: Game, w: BalancedWeighting) -> tuple[bool, bool]:
    """Return (pointwise_ok, inequality_holds).

    pointwise_ok: sum of weight * indicator(A) is at most 1 for every player.
    inequality_holds: sum of weight * v(A) is at most v(N).
    """
    for s in w.sets:
        if not is_subset(s, game.carrier):
            raise GameInputError(f"{format_coalition(s)} is outside the game")
    load = [Fraction(0)] * game.n
    for s, lam in zip(w.sets, w.weights):
        for k, hit in enumerate(indicator(s, game.n)):
            if hit:
                load[k] += lam
    pointwise_ok = all(x <= 1 for x in load)
    weighted = sum((lam * game.value(s) for s, lam in zip(w.sets, w.weights)), Fraction(0))
    return pointwise_ok, weighted <= game.value(game.carrier)


@dataclass(frozen=True)
class ThreePlayerStats:
    """Pair surpluses M_ij = v_ij - v_i - v_j and S = v(N) - v_1 - v_2 - v_3.

    Indices 1, 2, 3 refer to the game's players in ascending order.
    """

    M12: Fraction
    M13: Fraction
    M23: Fraction
    S: Fraction

    @property
    def pairs(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.M12, self.M13, self.M23


def three_player_stats(game: Game) -> ThreePlayerStats:
    a, b, c = require_three_players(game)
    v = game.value
    s = {p: v(bit(p)) for p in (a, b, c)}

    def surplus(i, j):
        return v(bit(i) | bit(j)) - s[i] - s[j]

    return ThreePlayerStats(
        M12=surplus(a, b),
        M13=surplus(a, c),
        M23=surplus(b, c),
        S=v(game.carrier) - s[a] - s[b] - s[c],
    )


def _require_superadditive_3p(game: Game) -> ThreePlayerStats:
    stats = three_player_stats(game)
    verdict = is_superadditive(game)
    if not verdict:
        a, b = verdict.witness
        raise PreconditionError(
            f"game is not super-additive: {format_coalition(a)} + {format_coalition(b)}"
        )
    return stats


def core_nonempty_3p(game: Game) -> bool:
    """Closed form for super-additive 3-player games: S >= (M12 + M13 + M23) / 2."""
    st = _require_superadditive_3p(game)
    return 2 * st.S >= st.M12 + st.M13 + st.M23


def is_convex_3p_closed_form(game: Game) -> bool:
    st = _require_superadditive_3p(game)
    return st.S >= max(st.M12 + st.M13, st.M12 + st.M23, st.M13 + st.M23)


@dataclass(frozen=True)
class CoreConstruction3p:
    allocation: Allocation
    case: str  # "triangle" or "broken-triangle"
    t: Fraction
    a: Optional[tuple[Fraction, Fraction, Fraction]] = None


def construct_core_element_3p(game: Game) -> CoreConstruction3p:
    """Explicit core element of a super-additive 3-player game with nonempty core.

    If the pair surpluses obey the triangle inequalities, each player gets
    v_i + a_i + t with a_i half the excess of its two pairs over the third.
    Otherwise one surplus, say M_ij, exceeds the other two combined; then
    t = (S - M_ik - M_jk) / 2, x_i = v_i + M_ik + t, x_j = v_j + M_jk + t
    and x_k = v_k.
    """
    st = _require_superadditive_3p(game)
    if 2 * st.S < st.M12 + st.M13 + st.M23:
        raise PreconditionError(
            f"core is empty: S={st.S} < (M12+M13+M23)/2={(st.M12 + st.M13 + st.M23) / 2}"
        )
    p = game.players
    single = [game.value(bit(q)) for q in p]
    # surplus[(x, y)] for positions 0..2
    surplus = {(0, 1): st.M12, (0, 2): st.M13, (1, 2): st.M23}

    def pair(x, y):
        return surplus[(min(x, y), max(x, y))]

    for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        if pair(i, j) > pair(i, k) + pair(j, k):
            t = (st.S - pair(i, k) - pair(j, k)) / 2
            x = [Fraction(0)] * 3
            x[i] = single[i] + pair(i, k) + t
            x[j] = single[j] + pair(j, k) + t
            x[k] = single[k]
            alloc = Allocation(dict(zip(p, x)))
            return CoreConstruction3p(alloc, "broken-triangle", t)

    a = (
        (st.M12 + st.M13 - st.M23) / 2,
        (st.M12 + st.M23 - st.M13) / 2,
        (st.M13 + st.M23 - st.M12) / 2,
    )
    t = (st.S - (st.M12 + st.M13 + st.M23) / 2) / 3
    alloc = Allocation({q: single[k] + a[k] + t for k, q in enumerate(p)})
    return CoreConstruction3p(alloc, "triangle", t, a)

