"""Payoff vectors indexed by player id."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping

from .coalition import bit, format_coalition, members
from .errors import GameInputError
from .game import Number, to_rational


class Allocation:
    """Exact payoffs for the players of a carrier coalition."""

    __slots__ = ("carrier", "_payoff")

    def __init__(self, payoff: Mapping[int, Number]):
        carrier = 0
        table = {}
        for player in sorted(payoff):
            carrier |= bit(player)
            table[player] = to_rational(payoff[player])
        if not table:
            raise GameInputError("an allocation needs at least one player")
        self.carrier = carrier
        self._payoff = table

    @classmethod
    def parse(cls, text: str) -> "Allocation":
        """Read ``"1=5/3,2=5/3,3=1"``."""
        payoff = {}
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            key, sep, val = part.partition("=")
            if not sep or not key.strip().isdigit():
                raise GameInputError(f"malformed allocation entry {part!r}")
            player = int(key)
            if player in payoff:
                raise GameInputError(f"player {player} allocated twice")
            payoff[player] = to_rational(val)
        return cls(payoff)

    def __getitem__(self, player: int) -> Fraction:
        try:
            return self._payoff[player]
        except KeyError:
            raise GameInputError(f"player {player} is not in this allocation") from None

    def __iter__(self) -> Iterator[int]:
        return iter(self._payoff)

    def __len__(self):
        return len(self._payoff)

    def items(self):
        return self._payoff.items()

    def as_tuple(self) -> tuple[Fraction, ...]:
        return tuple(self._payoff.values())

    def total(self, mask: int | None = None) -> Fraction:
        """x(A); the whole carrier when ``mask`` is None."""
        if mask is None:
            return sum(self._payoff.values(), Fraction(0))
        if mask & ~self.carrier:
            raise GameInputError(
                f"{format_coalition(mask)} is not inside {format_coalition(self.carrier)}"
            )
        return sum((self._payoff[p] for p in members(mask)), Fraction(0))

    def format(self, sep: str = " ") -> str:
        return sep.join(f"{p}={x}" for p, x in self._payoff.items())

    def __eq__(self, other):
        if isinstance(other, Allocation):
            return self._payoff == other._payoff
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._payoff.items()))

    def __repr__(self):
        return f"Allocation({self.format(', ')})"
