"""Finite grids of discrete classes for exhaustive scans."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .discrete_class import DiscreteClass, validate
from .numeric import parse_exponent


@dataclass(frozen=True)
class ScanSpec:
    """Grid bounds.

    Order of enumeration: by ``g``; within a ``g``, the tuple of non-final
    exponents runs lexicographically, each position taking the values q/p
    sorted by ``(p, q)``; the final exponent varies fastest, first the
    integers ``1..max_numerator`` ascending, then the irrational tokens in the
    order given.
    """

    max_g: int = 2
    max_numerator: int = 20
    max_denominator: int = 5
    deltas: tuple = (0, 1, 2, 3, 4)
    irrational_tails: tuple = ()


def inner_exponents(max_numerator: int, max_denominator: int) -> list[Fraction]:
    """Non-integer q/p > 1 in lowest terms, sorted by (p, q)."""
    out = []
    for p in range(2, max_denominator + 1):
        for q in range(p + 1, max_numerator + 1):
            if math.gcd(p, q) == 1:
                out.append(Fraction(q, p))
    return out


def iter_grid(spec: ScanSpec) -> Iterator[DiscreteClass]:
    inner = inner_exponents(spec.max_numerator, spec.max_denominator)
    finals: list = [Fraction(m) for m in range(1, spec.max_numerator + 1)]
    finals += [parse_exponent(tok) for tok in spec.irrational_tails]
    for g in range(spec.max_g + 1):
        for head in itertools.product(inner, repeat=g):
            for last in finals:
                yield validate((g, 1, *head, last))


def parse_deltas(text: str) -> tuple:
    """``"0:4"`` (inclusive range) or ``"0,2,3"``."""
    if ":" in text:
        lo, hi = text.split(":")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(x) for x in text.split(",") if x.strip())


def grid_size(spec: ScanSpec) -> int:
    inner = len(inner_exponents(spec.max_numerator, spec.max_denominator))
    finals = spec.max_numerator + len(spec.irrational_tails)
    return sum(inner**g for g in range(spec.max_g + 1)) * finals


__all__: Sequence[str] = ["ScanSpec", "grid_size", "inner_exponents", "iter_grid", "parse_deltas"]
