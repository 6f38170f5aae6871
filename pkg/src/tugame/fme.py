"""Exact Fourier-Motzkin elimination for systems ``a . x >= b``.

Rows are stored with coprime integer coefficients and a Fraction right-hand
side, deduplicated by direction (only the tightest bound is kept). That is
enough to keep the blow-up manageable for the core systems of games with at
most five players.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence


class Infeasible(Exception):
    pass


def _normalize(coeffs: Sequence[Fraction], rhs: Fraction) -> tuple[tuple[int, ...], Fraction]:
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g == 0:
        return tuple(ints), rhs
    return tuple(c // g for c in ints), rhs * den / g


class _System:
    def __init__(self, nvars: int):
        self.nvars = nvars
        self.rows: dict[tuple[int, ...], Fraction] = {}

    def add(self, coeffs: Sequence, rhs: Fraction) -> None:
        key, rhs = _normalize([Fraction(c) for c in coeffs], Fraction(rhs))
        if not any(key):
            if rhs > 0:
                raise Infeasible
            return
        old = self.rows.get(key)
        if old is None or rhs > old:
            self.rows[key] = rhs

    def eliminate(self, k: int) -> "_System":
        pos, neg, out = [], [], _System(self.nvars)
        for key, rhs in self.rows.items():
            a = key[k]
            if a > 0:
                pos.append((key, rhs))
            elif a < 0:
                neg.append((key, rhs))
            else:
                out.rows[key] = rhs
        for pk, pr in pos:
            for nk, nr in neg:
                p, q = pk[k], -nk[k]
                out.add([q * x + p * y for x, y in zip(pk, nk)], q * pr + p * nr)
        return out

    def cost(self, k: int) -> int:
        pos = sum(1 for key in self.rows if key[k] > 0)
        neg = sum(1 for key in self.rows if key[k] < 0)
        return pos * neg - pos - neg


def feasible_point(
    rows: Iterable[tuple[Sequence, Fraction]], nvars: int
) -> Optional[list[Fraction]]:
    """A point satisfying every ``coeffs . x >= rhs``, or None if none exists.

    Variables are eliminated greedily (fewest generated rows first); the
    point is rebuilt by back-substitution, taking each variable at its
    lower bound when it has one.
    """
    system = _System(nvars)
    try:
        for coeffs, rhs in rows:
            if len(coeffs) != nvars:
                raise ValueError("row length does not match the variable count")
            system.add(coeffs, rhs)
        stages = []
        remaining = set(range(nvars))
        while remaining:
            k = min(sorted(remaining), key=system.cost)
            stages.append((k, system))
            system = system.eliminate(k)
            remaining.discard(k)
    except Infeasible:
        return None

    x = [Fraction(0)] * nvars
    for k, stage in reversed(stages):
        lo = hi = None
        for key, rhs in stage.rows.items():
            a = key[k]
            if a == 0:
                continue
            rest = rhs - sum((c * x[j] for j, c in enumerate(key) if j != k and c), Fraction(0))
            bound = rest / a
            if a > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        if lo is not None:
            x[k] = lo
        elif hi is not None:
            x[k] = hi
        assert lo is None or hi is None or lo <= hi
    return x
