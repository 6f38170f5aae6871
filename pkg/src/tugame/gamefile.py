"""Reading and writing the ``.tug`` text format.

::

    # comments run to the end of the line
    players 3
    v 1 = 0
    v 1 2 = 3/2
    ...

One ``v`` line per nonempty coalition, in any order; ``;`` may stand in for
a line break. The empty coalition is implicitly 0.
"""

from __future__ import annotations

from .coalition import MAX_PLAYERS, bit, format_coalition, grand, members
from .errors import GameFileError, GameInputError
from .game import Game, to_rational


def _statements(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for stmt in line.split(";"):
            stmt = stmt.strip()
            if stmt:
                yield lineno, stmt


def parse_game(text: str) -> Game:
    n = None
    values: dict[int, object] = {}
    where: dict[int, int] = {}
    for lineno, stmt in _statements(text):
        head, _, rest = stmt.partition(" ")
        if n is None:
            if head != "players":
                raise GameFileError("expected 'players <n>' first", lineno)
            rest = rest.strip()
            if not rest.isdigit():
                raise GameFileError(f"malformed player count {rest!r}", lineno)
            n = int(rest)
            if not 1 <= n <= MAX_PLAYERS:
                raise GameFileError(f"player count must be in 1..{MAX_PLAYERS}", lineno)
            continue
        if head == "players":
            raise GameFileError("duplicate 'players' line", lineno)
        if head != "v":
            raise GameFileError(f"unknown statement {head!r}", lineno)
        ids, eq, val = rest.partition("=")
        if not eq:
            raise GameFileError("missing '='", lineno)
        mask = 0
        for tok in ids.split():
            if not tok.isdigit():
                raise GameFileError(f"malformed player id {tok!r}", lineno)
            p = int(tok)
            if not 1 <= p <= n:
                raise GameFileError(f"player {p} out of range 1..{n}", lineno)
            if mask & bit(p):
                raise GameFileError(f"player {p} listed twice", lineno)
            mask |= bit(p)
        if mask == 0:
            raise GameFileError("empty coalition (its value is implicitly 0)", lineno)
        if mask in values:
            raise GameFileError(
                f"duplicate coalition {format_coalition(mask)} (first on line {where[mask]})", lineno
            )
        try:
            values[mask] = to_rational(val.strip())
        except GameInputError as exc:
            raise GameFileError(str(exc), lineno) from None
        where[mask] = lineno
    if n is None:
        raise GameFileError("empty game file")
    missing = [m for m in range(1, grand(n) + 1) if m not in values]
    if missing:
        shown = ", ".join(format_coalition(m) for m in missing[:5])
        more = f" and {len(missing) - 5} more" if len(missing) > 5 else ""
        raise GameFileError(f"missing coalitions: {shown}{more}")
    return Game(n, values)


def format_game(game: Game) -> str:
    """Serialize by ascending bitmask. Subgames with a partial carrier are refused."""
    if game.carrier != grand(game.n):
        raise GameInputError("only games on the full player set 1..n can be written")
    lines = [f"players {game.n}"]
    for mask, val in game.items()[1:]:
        lines.append(f"v {' '.join(map(str, members(mask)))} = {val}")
    return "\n".join(lines) + "\n"


def load_game(path) -> Game:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read())


def dump_game(game: Game, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_game(game))

