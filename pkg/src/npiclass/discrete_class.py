"""Discrete classes ``(g, 1, b'_1, ..., b'_{g+1})`` and their contact invariants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

from .numeric import (
    DEFAULT_BUDGET,
    CertifiedIrrational,
    DomainError,
    Extended,
    Unknown,
    ext_gt,
    format_exponent,
    is_integer,
    parse_exponent,
)

__all__ = [
    "ClassViolation",
    "ContactData",
    "DiscreteClass",
    "InvalidClass",
    "ValuationKind",
    "contact_data",
    "last_contact_closed_form",
    "normalized_ratio",
    "parse_class",
    "validate",
]


class ValuationKind(Enum):
    DIVISORIAL = "divisorial"
    IRRATIONAL = "irrational"


class ClassViolation(NamedTuple):
    position: int  # index into the raw tuple (0 is g, 1 is b'_0)
    rule: str

    def __str__(self):
        return f"position {self.position}: {self.rule}"


class InvalidClass(DomainError):
    def __init__(self, violations: Sequence[ClassViolation]):
        self.violations = tuple(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class DiscreteClass:
    """A validated discrete class.

    ``exponents`` holds ``b'_1 .. b'_{g+1}``; ``b'_0 = 1`` is implicit.
    Build instances through :func:`validate` or :func:`parse_class`.
    """

    g: int
    exponents: tuple

    @property
    def kind(self) -> ValuationKind:
        if isinstance(self.exponents[-1], CertifiedIrrational):
            return ValuationKind.IRRATIONAL
        return ValuationKind.DIVISORIAL

    @property
    def last(self) -> Extended:
        return self.exponents[-1]

    def beta_prime(self, j: int) -> Extended:
        if j == 0:
            return Fraction(1)
        return self.exponents[j - 1]

    @property
    def as_tuple(self) -> tuple:
        return (self.g, Fraction(1), *self.exponents)

    def __str__(self):
        return f"{self.g}; " + ", ".join(format_exponent(x) for x in self.exponents)

    def __repr__(self):
        return f"DiscreteClass({str(self)!r})"


def _coerce(x):
    if isinstance(x, CertifiedIrrational):
        return x
    if isinstance(x, str):
        return parse_exponent(x)
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise DomainError(f"unsupported exponent value {x!r}")


def validate(raw, budget: int = DEFAULT_BUDGET) -> DiscreteClass:
    """Check a raw tuple ``(g, 1, b'_1, ..., b'_{g+1})``.

    Raises :class:`InvalidClass` listing every violated rule.
    """
    raw = tuple(raw)
    bad: list[ClassViolation] = []
    if not raw:
        raise InvalidClass([ClassViolation(0, "empty tuple")])
    g = raw[0]
    if not (isinstance(g, int) and not isinstance(g, bool)) or g < 0:
        raise InvalidClass([ClassViolation(0, "g must be a non-negative integer")])
    if len(raw) != g + 3:
        raise InvalidClass(
            [ClassViolation(0, f"expected {g + 3} entries for g={g}, got {len(raw)}")]
        )
    try:
        values = [_coerce(x) for x in raw[1:]]
    except DomainError as exc:
        raise InvalidClass([ClassViolation(1, str(exc))]) from None
    if values[0] != 1:
        bad.append(ClassViolation(1, "b'_0 must be 1"))
    exps = tuple(values[1:])
    for j, b in enumerate(exps[:-1], start=1):
        pos = j + 1
        if isinstance(b, CertifiedIrrational):
            bad.append(ClassViolation(pos, f"b'_{j} must be rational (j <= g)"))
            continue
        if is_integer(b):
            bad.append(ClassViolation(pos, f"b'_{j} = {b} must not be an integer (j <= g)"))
        if b <= 1:
            bad.append(ClassViolation(pos, f"b'_{j} = {b} must exceed 1"))
    last, pos = exps[-1], g + 2
    if isinstance(last, CertifiedIrrational):
        above = ext_gt(last, 1, budget)
        if isinstance(above, Unknown):
            bad.append(ClassViolation(pos, f"irrational b'_{g + 1} not certified > 1"))
        elif not above:
            bad.append(ClassViolation(pos, f"irrational b'_{g + 1} must exceed 1"))
    elif not is_integer(last):
        bad.append(ClassViolation(pos, f"b'_{g + 1} = {last} must be a positive integer or irrational"))
    elif last < 1:
        bad.append(ClassViolation(pos, f"b'_{g + 1} = {last} must be positive"))
    if bad:
        raise InvalidClass(bad)
    return DiscreteClass(g, exps)


def parse_class(text: str, budget: int = DEFAULT_BUDGET) -> DiscreteClass:
    """Parse the inline syntax ``"g; b'_1, ..., b'_{g+1}"``."""
    head, sep, tail = text.partition(";")
    if not sep:
        raise InvalidClass([ClassViolation(0, f"missing ';' in {text!r}")])
    try:
        g = int(head.strip())
    except ValueError:
        raise InvalidClass([ClassViolation(0, f"g is not an integer: {head.strip()!r}")]) from None
    tokens = [t for t in (s.strip() for s in tail.split(",")) if t]
    try:
        exps = [parse_exponent(t) for t in tokens]
    except DomainError as exc:
        raise InvalidClass([ClassViolation(2, str(exc))]) from None
    return validate((g, 1, *exps), budget)


class ContactData(NamedTuple):
    p: tuple  # denominators p_1..p_g
    e: tuple  # e_0..e_g
    n: tuple  # n_0..n_g
    w: tuple  # w_0..w_g
    beta_bar: tuple  # beta_bar_0..beta_bar_{g+1}


@lru_cache(maxsize=4096)
def contact_data(t: DiscreteClass) -> ContactData:
    g = t.g
    p = tuple(t.beta_prime(j).denominator for j in range(1, g + 1))
    e = [1] * (g + 1)
    for j in range(g - 1, -1, -1):
        e[j] = e[j + 1] * p[j]
    n = (1, *p)
    w = tuple(Fraction(ej, e[0]) for ej in e)
    bb: list = [e[0]]
    for j in range(g + 1):
        nxt = e[j] * (t.beta_prime(j + 1) - 1) + n[j] * bb[j]
        bb.append(int(nxt) if j < g else nxt)
    return ContactData(p, tuple(e), n, w, tuple(bb))


def last_contact_closed_form(t: DiscreteClass) -> Extended:
    """``sum_{j=1..g} e_j^2 (b'_{j+1} - 1) + bb_0 * bb_1``, without the recursion."""
    g = t.g
    e = [math.prod(t.beta_prime(k).denominator for k in range(j + 1, g + 1)) for j in range(g + 1)]
    bb0 = e[0]
    bb1 = bb0 * t.beta_prime(1)
    total = Fraction(0)
    for j in range(1, g + 1):
        total = total + e[j] ** 2 * (t.beta_prime(j + 1) - 1)
    return total + bb0 * bb1


def normalized_ratio(t: DiscreteClass) -> Extended:
    """``bb_{g+1} / bb_0^2``."""
    cd = contact_data(t)
    return cd.beta_bar[-1] / (cd.beta_bar[0] ** 2)
