"""Deterministic random games for property tests and fixtures.

All randomness comes from SplitMix64 (Steele, Lea and Flood 2014) seeded
with the 64-bit config seed. Bounded integers are drawn by rejection:
``below(k)`` discards raw outputs >= 2**64 - (2**64 mod k) and returns the
rest mod k. Every draw order is documented on the generator that makes it,
so the fixtures can be reproduced in any language.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb

from .coalition import grand, size, subsets
from .errors import GameInputError
from .game import Game, is_convex, is_superadditive

_MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            r = self.next()
            if r < limit:
                return r % bound

    def integer(self, low: int, high: int) -> int:
        """Uniform integer in [low, high]."""
        return low + self.below(high - low + 1)

    def shuffle(self, items: list) -> None:
        # Fisher-Yates from the back.
        for k in range(len(items) - 1, 0, -1):
            j = self.below(k + 1)
            items[k], items[j] = items[j], items[k]


class Mode(str, enum.Enum):
    DIVIDENDS = "dividends"
    REJECTION = "rejection"
    SUPERADDITIVE3P = "superadditive3p"


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    seed: int
    dividend_max: int = 5
    mode: Mode = Mode.DIVIDENDS

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if not 2 <= self.n <= 8:
            raise GameInputError(f"generator player count must be in 2..8, got {self.n}")
        if self.dividend_max < 1:
            raise GameInputError("dividend_max must be positive")
        if not 0 <= self.seed <= _MASK64:
            raise GameInputError("seed must fit in 64 unsigned bits")


def game_from_dividends(n: int, dividends: dict[int, int]) -> Game:
    """v(A) = sum of d_B over nonempty B inside A."""
    values = {}
    for mask in subsets(grand(n), include_empty=False):
        values[mask] = sum(dividends.get(b, 0) for b in subsets(mask, include_empty=False))
    return Game(n, values)


def gen_convex_dividends(config: GeneratorConfig) -> Game:
    """Convex game from nonnegative Harsanyi dividends.

    Draws d_B = integer(0, dividend_max) for every nonempty B in ascending
    bitmask order.
    """
    rng = SplitMix64(config.seed)
    dividends = {
        mask: rng.integer(0, config.dividend_max)
        for mask in subsets(grand(config.n), include_empty=False)
    }
    game = game_from_dividends(config.n, dividends)
    assert is_convex(game)
    return game


def gen_rejection(config: GeneratorConfig, max_attempts: int = 10**6) -> Game:
    """Uniform integer game conditioned on convexity (n <= 4).

    Each attempt draws 2^n - 1 values integer(0, dividend_max), sorts them
    ascending and hands them out by coalition size: the smallest n values go
    to the singletons, the next C(n, 2) to the pairs, and so on. Within a
    size level the values are shuffled (Fisher-Yates, see SplitMix64.shuffle)
    and assigned in ascending bitmask order. Attempts repeat until the game
    is convex.
    """
    n = config.n
    if n > 4:
        raise GameInputError("rejection sampling is limited to n <= 4")
    rng = SplitMix64(config.seed)
    levels = [[m for m in subsets(grand(n), include_empty=False) if size(m) == k] for k in range(1, n + 1)]
    for _ in range(max_attempts):
        draws = sorted(rng.integer(0, config.dividend_max) for _ in range(grand(n)))
        values = {}
        start = 0
        for k, level in enumerate(levels, start=1):
            chunk = draws[start : start + comb(n, k)]
            start += comb(n, k)
            rng.shuffle(chunk)
            values.update(zip(level, chunk))
        game = Game(n, values)
        if is_convex(game):
            return game
    raise RuntimeError(f"no convex game after {max_attempts} attempts")


def gen_superadditive_3p(config: GeneratorConfig) -> Game:
    """Super-additive 3-player game, convex or not.

    Draw order: v_1, v_2, v_3, then surpluses M_12, M_13, M_23, then r, each
    integer(0, dividend_max). Pairs get v_i + v_j + M_ij and the grand
    coalition v_1 + v_2 + v_3 + max(M_ij) + r.
    """
    if config.n != 3:
        raise GameInputError("superadditive3p mode produces 3-player games")
    rng = SplitMix64(config.seed)
    d = config.dividend_max
    single = [rng.integer(0, d) for _ in range(3)]
    m12, m13, m23 = (rng.integer(0, d) for _ in range(3))
    slack = rng.integer(0, d)
    v1, v2, v3 = single
    game = Game.from_table(3, {
        (1,): v1, (2,): v2, (3,): v3,
        (1, 2): v1 + v2 + m12,
        (1, 3): v1 + v3 + m13,
        (2, 3): v2 + v3 + m23,
        (1, 2, 3): v1 + v2 + v3 + max(m12, m13, m23) + slack,
    })
    assert is_superadditive(game)
    return game


def uniform_game(n: int, seed: int, low: int, high: int) -> Game:
    """Arbitrary game: integer(low, high) per nonempty coalition, ascending bitmask."""
    rng = SplitMix64(seed)
    return Game(n, {m: rng.integer(low, high) for m in subsets(grand(n), include_empty=False)})


def generate(config: GeneratorConfig) -> Game:
    if config.mode is Mode.DIVIDENDS:
        return gen_convex_dividends(config)
    if config.mode is Mode.REJECTION:
        return gen_rejection(config)
    return gen_superadditive_3p(config)


def unanimity_game(n: int, mask: int) -> Game:
    """v(A) = 1 when A contains ``mask``, else 0."""
    return Game.from_function(n, lambda a: 1 if a & mask == mask else 0)

