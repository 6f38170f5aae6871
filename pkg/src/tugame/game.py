"""TU games with exact rational values, aggregates and structural predicates."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable, Iterable, Mapping, Optional, Union

from .coalition import (
    MAX_PLAYERS,
    bit,
    format_coalition,
    grand,
    is_subset,
    members,
    size,
    subsets,
)
from .errors import ConvexityViolation, GameInputError, PreconditionError

Number = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def to_rational(value: Number) -> Fraction:
    """Exact conversion of an int, Fraction or ``"p/q"`` literal.

    Floats are refused: they would smuggle rounding into every result.
    """
    if isinstance(value, bool):
        raise GameInputError("booleans are not game values")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise GameInputError(f"malformed rational {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise GameInputError(f"zero denominator in {value!r}") from None
    raise GameInputError(f"cannot use {type(value).__name__} as an exact value")


class Game:
    """A TU game on the players of ``carrier`` (a subset of 1..n).

    ``values`` maps every nonempty submask of the carrier to its worth;
    the empty coalition is implicitly 0. Subgames keep the original
    player labels, so their carrier is a proper subset of 1..n.
    """

    __slots__ = ("n", "carrier", "_values")

    def __init__(self, n: int, values: Mapping[int, Number], carrier: Optional[int] = None):
        if not 1 <= n <= MAX_PLAYERS:
            raise GameInputError(f"player count must be in 1..{MAX_PLAYERS}, got {n}")
        universe = grand(n)
        carrier = universe if carrier is None else carrier
        if carrier == 0 or not is_subset(carrier, universe):
            raise GameInputError(f"invalid carrier {format_coalition(carrier)} for n={n}")
        table = {0: Fraction(0)}
        for mask, val in values.items():
            if not is_subset(mask, carrier):
                raise GameInputError(
                    f"coalition {format_coalition(mask)} is outside the carrier "
                    f"{format_coalition(carrier)}"
                )
            val = to_rational(val)
            if mask == 0 and val != 0:
                raise GameInputError("the empty coalition must have value 0")
            table[mask] = val
        expected = 1 << size(carrier)
        if len(table) != expected:
            missing = next(m for m in subsets(carrier) if m not in table)
            raise GameInputError(f"no value for coalition {format_coalition(missing)}")
        self.n = n
        self.carrier = carrier
        self._values = table

    @classmethod
    def from_table(cls, n: int, table: Mapping[Iterable[int], Number]) -> "Game":
        """Build from ``{(1, 2): 3, ...}``; keys are player tuples."""
        values = {}
        for players, val in table.items():
            mask = 0
            for p in players:
                if not 1 <= p <= n:
                    raise GameInputError(f"player {p} out of range 1..{n}")
                mask |= bit(p)
            if mask in values:
                raise GameInputError(f"duplicate coalition {format_coalition(mask)}")
            values[mask] = val
        return cls(n, values)

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int], Number], carrier: Optional[int] = None) -> "Game":
        carrier = grand(n) if carrier is None else carrier
        return cls(n, {m: fn(m) for m in subsets(carrier, include_empty=False)}, carrier)

    @classmethod
    def additive(cls, weights: Mapping[int, Number] | Iterable[Number]) -> "Game":
        """Inessential game v(A) = sum of the members' weights."""
        if not isinstance(weights, Mapping):
            weights = {i: w for i, w in enumerate(weights, start=1)}
        w = {p: to_rational(x) for p, x in weights.items()}
        n = max(w)
        carrier = 0
        for p in w:
            carrier |= bit(p)
        return cls.from_function(n, lambda m: sum((w[p] for p in members(m)), Fraction(0)), carrier)

    @property
    def players(self) -> tuple[int, ...]:
        return members(self.carrier)

    @property
    def size(self) -> int:
        return size(self.carrier)

    def value(self, mask: int) -> Fraction:
        try:
            return self._values[mask]
        except KeyError:
            if mask < 0 or mask >> self.n:
                raise GameInputError(
                    f"coalition {format_coalition(mask)} references a player > {self.n}"
                ) from None
            raise GameInputError(
                f"coalition {format_coalition(mask)} is outside the carrier "
                f"{format_coalition(self.carrier)}"
            ) from None

    __call__ = value

    def items(self):
        """(mask, value) pairs for every coalition, ascending by mask."""
        return [(m, self._values[m]) for m in subsets(self.carrier)]

    def __eq__(self, other):
        if not isinstance(other, Game):
            return NotImplemented
        return (self.n, self.carrier, self._values) == (other.n, other.carrier, other._values)

    def __hash__(self):
        return hash((self.n, self.carrier, tuple(self.items())))

    def __repr__(self):
        body = ", ".join(f"{format_coalition(m)}: {v}" for m, v in self.items()[1:])
        return f"Game(n={self.n}, {body})"


def value(game: Game, mask: int) -> Fraction:
    return game.value(mask)


def marginal_contribution(game: Game, player: int, mask: int) -> Fraction:
    """v(A + i) - v(A) for a player not in A."""
    b = bit(player)
    if mask & b:
        raise PreconditionError(f"player {player} already belongs to {format_coalition(mask)}")
    if not game.carrier & b:
        raise GameInputError(f"player {player} is not in the game")
    return game.value(mask | b) - game.value(mask)


@dataclass(frozen=True)
class GameAggregates:
    top_marginals: dict  # player -> m_i(N - i)
    M: Fraction
    T: Fraction
    V: Fraction


def aggregates(game: Game) -> GameAggregates:
    N = game.carrier
    top = {i: marginal_contribution(game, i, N & ~bit(i)) for i in game.players}
    return GameAggregates(
        top_marginals=top,
        M=sum(top.values(), Fraction(0)),
        T=game.value(N),
        V=sum((game.value(bit(i)) for i in game.players), Fraction(0)),
    )


@dataclass(frozen=True)
class Check:
    """Outcome of a predicate; ``witness`` describes one violation."""

    holds: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.holds


def is_superadditive(game: Game) -> Check:
    """v(A) + v(B) <= v(A | B) for disjoint nonempty A, B.

    The witness is the first violating pair (A, B) with A < B.
    """
    N = game.carrier
    v = game._values
    for a in subsets(N, include_empty=False):
        va = v[a]
        for b in subsets(N & ~a, include_empty=False):
            if b > a and va + v[b] > v[a | b]:
                return Check(False, (a, b))
    return Check(True)


def _convex_by_marginals(game: Game) -> Check:
    # Adjacent pairs A, A + j suffice: monotonicity then chains to all A <= B.
    N = game.carrier
    v = game._values
    players = game.players
    for i in players:
        bi = bit(i)
        rest = N & ~bi
        for a in subsets(rest):
            base = v[a | bi] - v[a]
            for j in players:
                bj = bit(j)
                if bj & (a | bi):
                    continue
                if base > v[a | bj | bi] - v[a | bj]:
                    return Check(False, (i, a, j))
    return Check(True)


def _convex_pairwise(game: Game) -> Check:
    N = game.carrier
    v = game._values
    for a in subsets(N):
        for b in subsets(N):
            if b > a and v[a] + v[b] > v[a | b] + v[a & b]:
                return Check(False, (a, b))
    return Check(True)


def is_convex(game: Game, method: str = "marginal") -> Check:
    """Supermodularity test.

    ``method`` is ``"marginal"`` (default; witness ``(i, A, j)`` with
    m_i(A) > m_i(A + j)), ``"pairwise"`` (witness ``(A, B)`` violating the
    defining inequality) or ``"both"``, which runs the two and raises
    ``AssertionError`` if they disagree.
    """
    if method == "marginal":
        return _convex_by_marginals(game)
    if method == "pairwise":
        return _convex_pairwise(game)
    if method == "both":
        fast, slow = _convex_by_marginals(game), _convex_pairwise(game)
        if fast.holds != slow.holds:
            raise AssertionError(f"convexity checks disagree on {game!r}: {fast} vs {slow}")
        return fast
    raise ValueError(f"unknown convexity method {method!r}")


def describe_convexity_witness(witness: tuple) -> str:
    if len(witness) == 3:
        i, a, j = witness
        return (f"player {i} adds more to {format_coalition(a)} "
                f"than to {format_coalition(a | bit(j))}")
    a, b = witness
    return f"v({format_coalition(a)}) + v({format_coalition(b)}) exceeds v(union) + v(intersection)"


def require_convex(game: Game) -> None:
    verdict = is_convex(game)
    if not verdict:
        raise ConvexityViolation(f"game is not convex: {describe_convexity_witness(verdict.witness)}")


def is_essential(game: Game) -> bool:
    agg = aggregates(game)
    return agg.T > agg.V


def subgame(game: Game, mask: int) -> Game:
    """Restriction of ``game`` to the coalition ``mask``, labels preserved."""
    if mask == 0:
        raise GameInputError("cannot restrict to the empty coalition")
    if not is_subset(mask, game.carrier):
        raise GameInputError(
            f"{format_coalition(mask)} is not a subset of {format_coalition(game.carrier)}"
        )
    v = game._values
    return Game(game.n, {m: v[m] for m in subsets(mask)}, mask)


def require_three_players(game: Game) -> tuple[int, int, int]:
    if game.size != 3:
        raise GameInputError(f"expected a 3-player game, got {game.size} players")
    return game.players  # type: ignore[return-value]


def is_convex_3p_inequalities(game: Game) -> bool:
    """v_i + v_j + m_k <= T <= m_i + m_j + v_k over all orderings (i, j, k)."""
    players = require_three_players(game)
    agg = aggregates(game)
    single = {p: game.value(bit(p)) for p in players}
    top = agg.top_marginals
    for i, j, k in permutations(players):
        if not single[i] + single[j] + top[k] <= agg.T <= top[i] + top[j] + single[k]:
            return False
    return True
