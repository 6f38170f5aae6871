"""Grand-coalition encouragement and population monotone allocation schemes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .allocation import Allocation
from .coalition import bit, format_coalition, is_subset, members, subsets
from .errors import GameInputError
from .game import Game, require_convex, subgame
from .solutions import SolutionMethod, solve


@dataclass(frozen=True)
class EncouragementViolation:
    """Player ``player`` gets more in the subgame on ``coalition``."""

    player: int
    coalition: int
    grand_value: Fraction
    sub_value: Fraction


@dataclass(frozen=True)
class EncouragementReport:
    encourages: bool
    violations: tuple[EncouragementViolation, ...] = ()

    def __bool__(self):
        return self.encourages


def encourages_on(game: Game, method: SolutionMethod | str) -> EncouragementReport:
    """Compare each player's payoff in the full game with every subgame containing it.

    Violations are listed by ascending coalition bitmask, then player id.
    """
    require_convex(game)
    full = solve(game, method)
    found = []
    for mask in subsets(game.carrier, include_empty=False):
        part = full if mask == game.carrier else solve(subgame(game, mask), method)
        for i in members(mask):
            if full[i] < part[i]:
                found.append(EncouragementViolation(i, mask, full[i], part[i]))
    return EncouragementReport(not found, tuple(found))


@dataclass(frozen=True)
class AllocationScheme:
    """One allocation per nonempty coalition of ``carrier``."""

    carrier: int
    allocations: Mapping[int, Allocation] = field(default_factory=dict)

    def __getitem__(self, mask: int) -> Allocation:
        return self.allocations[mask]


def induced_scheme(game: Game, method: SolutionMethod | str) -> AllocationScheme:
    require_convex(game)
    allocations = {}
    for mask in subsets(game.carrier, include_empty=False):
        allocations[mask] = solve(subgame(game, mask), method)
    return AllocationScheme(game.carrier, allocations)


@dataclass(frozen=True)
class PmasViolation:
    player: int
    smaller: int
    larger: int
    smaller_value: Fraction
    larger_value: Fraction


@dataclass(frozen=True)
class PmasReport:
    monotone: bool
    violation: Optional[PmasViolation] = None

    def __bool__(self):
        return self.monotone


def is_pmas(scheme: AllocationScheme, adjacent_only: bool = True) -> PmasReport:
    """Check x_i^A <= x_i^B for every i in A subset of B.

    Only pairs B = A + j are compared by default; monotonicity along single
    steps chains to all nested pairs. ``adjacent_only=False`` compares all
    nested pairs (for cross-checking). The first violation in order of A,
    then i, then B is reported.
    """
    N = scheme.carrier
    for mask in subsets(N, include_empty=False):
        alloc = scheme.allocations.get(mask)
        if alloc is None:
            raise GameInputError(f"scheme has no allocation for {format_coalition(mask)}")
        if alloc.carrier != mask:
            raise GameInputError(f"allocation for {format_coalition(mask)} has the wrong carrier")

    for small in subsets(N, include_empty=False):
        x = scheme.allocations[small]
        outside = N & ~small
        if adjacent_only:
            bigger = [small | bit(j) for j in members(outside)]
        else:
            bigger = [small | extra for extra in subsets(outside, include_empty=False)]
        for i in members(small):
            for big in bigger:
                y = scheme.allocations[big]
                if x[i] > y[i]:
                    return PmasReport(False, PmasViolation(i, small, big, x[i], y[i]))
    return PmasReport(True)


def scheme_is_efficient(game: Game, scheme: AllocationScheme) -> bool:
    return all(
        is_subset(mask, game.carrier) and alloc.total() == game.value(mask)
        for mask, alloc in scheme.allocations.items()
    )
