"""Extending NPI discrete classes by new Puiseux exponents.

Starting from an NPI class whose last exponent is 1 and whose criterion holds
strictly, three kinds of extension stay in the same NPI set:

* :func:`output1` appends a rational exponent q/p followed by a new final 1;
* :func:`output2_irrational` replaces the final 1 by an irrational;
* :func:`output2_integer` replaces the final 1 of an Output-1 class by an
  integer tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence, Union

from .discrete_class import DiscreteClass, ValuationKind, contact_data, validate
from .npi import SurfaceContext, classify, classify_dual_form, q_value
from .numeric import (
    DEFAULT_BUDGET,
    CertifiedIrrational,
    DomainError,
    Undecidable,
    Unknown,
    ext_gt,
    format_exponent,
    parse_exponent,
)

__all__ = [
    "BudgetLine",
    "ChainStep",
    "ChainTrace",
    "Enumerate",
    "Irrational",
    "MaxIntegerTail",
    "NotExtensible",
    "RejectedChoice",
    "Single",
    "TailChoice",
    "TailResult",
    "chain",
    "check_input",
    "output1",
    "output2_integer",
    "output2_irrational",
    "parse_strategy",
]


class NotExtensible(DomainError):
    """The input fails the strict criterion required for extension."""

    def __init__(self, message: str, deficit: Fraction | None = None):
        super().__init__(message)
        self.deficit = deficit


class RejectedChoice(DomainError):
    """A requested exponent violates the extension bound."""


# -- strategies --------------------------------------------------------------


@dataclass(frozen=True)
class Enumerate:
    """All admissible q/p ordered by denominator, then numerator.

    ``limit`` caps the denominator; None gives an endless stream.
    """

    limit: int | None = None


@dataclass(frozen=True)
class Single:
    value: Fraction


@dataclass(frozen=True)
class Irrational:
    token: str


@dataclass(frozen=True)
class MaxIntegerTail:
    pass


@dataclass(frozen=True)
class TailChoice:
    value: int


Strategy = Union[Enumerate, Single, Irrational, MaxIntegerTail, TailChoice]


def parse_strategy(text: str) -> Strategy:
    kind, _, arg = text.strip().partition(":")
    if kind == "enumerate":
        return Enumerate(int(arg) if arg else None)
    if kind == "single":
        return Single(Fraction(arg))
    if kind == "irrational":
        return Irrational(arg)
    if kind == "max-integer-tail":
        return MaxIntegerTail()
    if kind == "tail":
        return TailChoice(int(arg))
    raise DomainError(f"unknown strategy {text!r}")


# -- input check ---------------------------------------------------------------


@dataclass(frozen=True)
class BudgetLine:
    """Admissible new exponents form the interval (1, bound]."""

    bound: Fraction
    q: Fraction
    partial_sum: Fraction


def _require_seed(t: DiscreteClass) -> None:
    if t.kind is not ValuationKind.DIVISORIAL:
        raise DomainError(f"{t} is not divisorial")
    if t.g >= 1 and t.last != 1:
        raise DomainError(f"{t} must end with exponent 1")


def check_input(t: DiscreteClass, ctx: SurfaceContext) -> BudgetLine:
    """Verify the strict input inequality and return the Output-1 bound.

    For g = 0 seeds the whole class is the tail; the bound is computed with
    an empty sum and ``w_0 = 1``.
    """
    _require_seed(t)
    w = contact_data(t).w
    q = q_value(t, ctx)
    partial = Fraction(0)
    for j in range(1, t.g):
        partial += w[j] ** 2 * (t.beta_prime(j + 1) - 1)
    if not q > partial:
        raise NotExtensible(
            f"{t} on {ctx.token}: q = {q} does not exceed {partial}", deficit=partial - q
        )
    bound = (q - partial) / w[t.g] ** 2 + 1
    return BudgetLine(bound=bound, q=q, partial_sum=partial)


# -- Output 1 ------------------------------------------------------------------


def _extend(t: DiscreteClass, exponent) -> DiscreteClass:
    if t.g == 0:
        return validate((1, 1, exponent, 1))
    return validate((t.g + 1, 1, *t.exponents[:-1], exponent, 1))


def _assert_sound(new: DiscreteClass, ctx, budget) -> bool:
    v = classify(new, ctx, budget)
    d = classify_dual_form(new, ctx, budget)
    if isinstance(v.member, Unknown):
        raise Undecidable(f"membership of {new} undecided", v.member.width)
    if v.member != d.member:
        raise RuntimeError(f"criterion forms disagree on {new}")
    return v.member


def _admissible(r: Fraction, bound: Fraction) -> bool:
    return r.denominator >= 2 and 1 < r <= bound


def _candidates(bound: Fraction, limit: int | None) -> Iterator[Fraction]:
    p = 2
    while limit is None or p <= limit:
        for q in range(p + 1, math.floor(bound * p) + 1):
            if math.gcd(p, q) == 1:
                yield Fraction(q, p)
        p += 1


def output1(
    t: DiscreteClass,
    ctx: SurfaceContext,
    strategy: Strategy = Enumerate(),
    budget: int = DEFAULT_BUDGET,
) -> Iterator[DiscreteClass]:
    """Lazily yield Output-1 classes for ``t`` on ``ctx``."""
    line = check_input(t, ctx)
    if isinstance(strategy, Single):
        r = Fraction(strategy.value)
        if not _admissible(r, line.bound):
            raise RejectedChoice(
                f"{r} outside (1, {line.bound}] or integral (needs denominator >= 2)"
            )
        new = _extend(t, r)
        if not _assert_sound(new, ctx, budget):
            # only reachable from g = 0 seeds, where q changes with the new exponent
            raise RejectedChoice(f"{new} is not NPI on {ctx.token}")
        return iter([new])
    if isinstance(strategy, Enumerate):
        return _enumerate(t, ctx, line, strategy.limit, budget)
    raise DomainError(f"strategy {strategy!r} does not apply to Output 1")


def _enumerate(t, ctx, line, limit, budget):
    for r in _candidates(line.bound, limit):
        new = _extend(t, r)
        if _assert_sound(new, ctx, budget):
            yield new


# -- Output 2 ------------------------------------------------------------------


def output2_irrational(
    t: DiscreteClass,
    ctx: SurfaceContext,
    strategy: Irrational,
    budget: int = DEFAULT_BUDGET,
) -> DiscreteClass:
    """Replace the final 1 of ``t`` by a certified irrational in (1, bound]."""
    if t.g < 1:
        raise DomainError("irrational extension needs g >= 1")
    line = check_input(t, ctx)
    alpha = parse_exponent(strategy.token) if isinstance(strategy.token, str) else strategy.token
    if not isinstance(alpha, CertifiedIrrational):
        raise RejectedChoice(f"{format_exponent(alpha)} is not irrational")
    above = ext_gt(alpha, 1, budget)
    below = ext_gt(line.bound, alpha, budget)  # equality impossible
    for tb in (above, below):
        if isinstance(tb, Unknown):
            raise Undecidable(
                f"cannot place {format_exponent(alpha)} inside (1, {line.bound}]", tb.width
            )
    if not (above and below):
        raise RejectedChoice(f"{format_exponent(alpha)} not in (1, {line.bound}]")
    new = validate((t.g, 1, *t.exponents[:-1], alpha), budget)
    if not _assert_sound(new, ctx, budget):
        raise RuntimeError(f"irrational extension {new} is not NPI")
    return new


@dataclass(frozen=True)
class TailResult:
    """Integer-tail data for an Output-1 class.

    ``capacity`` is C; any tail ``m`` with ``2 <= m <= max_tail`` keeps the
    class NPI, and ``max_tail - 1`` is the largest number of free tail points.
    """

    capacity: Fraction
    max_tail: int
    result: DiscreteClass | None


def output2_integer(
    t1: DiscreteClass,
    ctx: SurfaceContext,
    choice: Strategy = MaxIntegerTail(),
    budget: int = DEFAULT_BUDGET,
) -> TailResult:
    if t1.g < 1:
        raise DomainError("integer tail extension needs g >= 1")
    _require_seed(t1)
    w = contact_data(t1).w
    partial = Fraction(0)
    for j in range(1, t1.g):
        partial += w[j] ** 2 * (t1.beta_prime(j + 1) - 1)
    cap = (q_value(t1, ctx) - partial) / w[t1.g] ** 2
    if cap < 0:
        raise NotExtensible(f"{t1} is not NPI on {ctx.token} (C = {cap})", deficit=-cap)
    max_tail = math.floor(cap) + 1
    if isinstance(choice, TailChoice):
        m = choice.value
        if m < 2 or m > max_tail:
            raise RejectedChoice(f"tail {m} outside [2, {max_tail}] (C = {cap})")
    elif isinstance(choice, MaxIntegerTail):
        m = max_tail
    else:
        raise DomainError(f"strategy {choice!r} does not apply to integer tails")
    if m < 2:
        return TailResult(cap, max_tail, None)
    new = validate((t1.g, 1, *t1.exponents[:-1], m))
    if not _assert_sound(new, ctx, budget):
        raise RuntimeError(f"integer tail {new} is not NPI")
    return TailResult(cap, max_tail, new)


# -- chains --------------------------------------------------------------------


@dataclass(frozen=True)
class ChainStep:
    source: DiscreteClass
    context: SurfaceContext
    bound: Fraction
    choice: Fraction
    result: DiscreteClass

    def record(self) -> dict[str, str]:
        return {
            "input": str(self.source),
            "context": self.context.token,
            "bound": format_exponent(self.bound),
            "choice": format_exponent(self.choice),
            "result": str(self.result),
        }


@dataclass
class ChainTrace:
    steps: list = field(default_factory=list)
    stopped: NotExtensible | None = None

    @property
    def classes(self) -> list[DiscreteClass]:
        return [s.result for s in self.steps]


def chain(
    seed: DiscreteClass,
    ctx: SurfaceContext,
    script: Sequence[Strategy],
    budget: int = DEFAULT_BUDGET,
) -> ChainTrace:
    """Apply Output 1 repeatedly; stops (recording why) once a class is not
    strictly extensible."""
    trace = ChainTrace()
    current = seed
    for strategy in script:
        try:
            line = check_input(current, ctx)
        except NotExtensible as exc:
            trace.stopped = exc
            break
        new = next(iter(output1(current, ctx, strategy, budget)), None)
        if new is None:
            trace.stopped = NotExtensible(f"no admissible exponent for {current}")
            break
        chosen = new.beta_prime(new.g)
        trace.steps.append(ChainStep(current, ctx, line.bound, chosen, new))
        current = new
    return trace
