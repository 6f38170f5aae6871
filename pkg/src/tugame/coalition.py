"""Coalitions as integer bitmasks.

Player ``i`` (1-based) is bit ``i - 1``. Union, intersection and
difference are the usual ``|``, ``&`` and ``& ~`` on ints; the helpers
here cover everything that needs the player numbering.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import GameInputError

MAX_PLAYERS = 16


def bit(player: int) -> int:
    if player < 1:
        raise GameInputError(f"player ids start at 1, got {player}")
    return 1 << (player - 1)


def coalition(*players: int) -> int:
    """Bitmask of the given players; ``coalition()`` is the empty set."""
    mask = 0
    for p in players:
        mask |= bit(p)
    return mask


def from_players(players: Iterable[int]) -> int:
    return coalition(*players)


def grand(n: int) -> int:
    return (1 << n) - 1


def members(mask: int) -> tuple[int, ...]:
    """Players of ``mask`` in ascending order."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def contains(mask: int, player: int) -> bool:
    return bool(mask >> (player - 1) & 1)


def size(mask: int) -> int:
    return bin(mask).count("1")


def complement(mask: int, universe: int) -> int:
    return universe & ~mask


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def indicator(mask: int, n: int) -> tuple[int, ...]:
    """0/1 vector of length ``n``; entry ``i - 1`` is 1 iff player i is in ``mask``."""
    if mask >> n:
        raise GameInputError(f"coalition {format_coalition(mask)} has a player > {n}")
    return tuple((mask >> k) & 1 for k in range(n))


def subsets(mask: int, include_empty: bool = True) -> Iterator[int]:
    """All submasks of ``mask`` in ascending numeric order."""
    if include_empty:
        yield 0
    sub = 0
    # Ascending enumeration: next submask is ((sub - mask) & mask).
    while True:
        sub = (sub - mask) & mask
        if sub == 0:
            return
        yield sub


def format_coalition(mask: int) -> str:
    return "{" + ",".join(str(p) for p in members(mask)) + "}"
