"""NPI membership of discrete classes on P^2 and Hirzebruch surfaces.

Every test reduces to one inequality ``lhs >= rhs`` in which ``lhs`` is an
exact rational and ``rhs`` is rational or an affine image of a certified
irrational.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .discrete_class import DiscreteClass, contact_data
from .numeric import (
    DEFAULT_BUDGET,
    CertifiedIrrational,
    DomainError,
    Extended,
    Undecidable,
    Unknown,
    ext_ceil,
    ext_floor,
    ext_ge,
    ext_gt,
    format_exponent,
)

__all__ = [
    "HirzebruchNonSpecial",
    "HirzebruchSpecial",
    "InclusionReport",
    "Projective",
    "SurfaceContext",
    "UnsupportedClass",
    "Verdict",
    "check_inclusions",
    "classify",
    "classify_dual_form",
    "nonspecial_max_delta",
    "parse_surface",
    "q_value",
    "rhs_sum",
    "special_min_delta",
]

log = logging.getLogger(__name__)


class UnsupportedClass(DomainError):
    """The class lies outside what the numeric criteria cover."""


@dataclass(frozen=True)
class Projective:
    @property
    def token(self):
        return "p2"


@dataclass(frozen=True)
class HirzebruchSpecial:
    delta: int

    def __post_init__(self):
        if not isinstance(self.delta, int) or self.delta < 0:
            raise DomainError(f"special context needs integer delta >= 0, got {self.delta}")

    @property
    def token(self):
        return f"special:{self.delta}"


@dataclass(frozen=True)
class HirzebruchNonSpecial:
    delta: int

    def __post_init__(self):
        if not isinstance(self.delta, int) or self.delta < 1:
            raise DomainError(f"non-special context needs integer delta >= 1, got {self.delta}")

    @property
    def token(self):
        return f"nonspecial:{self.delta}"


SurfaceContext = Union[Projective, HirzebruchSpecial, HirzebruchNonSpecial]


def parse_surface(text: str) -> SurfaceContext:
    text = text.strip().lower()
    if text in ("p2", "projective"):
        return Projective()
    kind, _, delta = text.partition(":")
    try:
        d = int(delta)
    except ValueError:
        raise DomainError(f"bad surface token {text!r}") from None
    if kind == "special":
        return HirzebruchSpecial(d)
    if kind == "nonspecial":
        return HirzebruchNonSpecial(d)
    raise DomainError(f"bad surface token {text!r}")


def _tri_token(x) -> str:
    if isinstance(x, Unknown):
        return "unknown"
    return "true" if x else "false"


@dataclass(frozen=True)
class Verdict:
    context: SurfaceContext
    member: object  # TriBool
    lhs: Fraction
    rhs: Extended
    margin: Extended
    strict: object  # TriBool

    def record(self) -> dict[str, str]:
        return {
            "context": self.context.token,
            "member": _tri_token(self.member),
            "lhs": format_exponent(self.lhs),
            "rhs": format_exponent(self.rhs),
            "margin": format_exponent(self.margin),
            "strict": _tri_token(self.strict),
        }


def _beta1(t: DiscreteClass) -> Fraction:
    b1 = t.beta_prime(1)
    if isinstance(b1, CertifiedIrrational):
        raise UnsupportedClass("g = 0 with an irrational exponent: q(t) would be irrational")
    return b1


def q_value(t: DiscreteClass, ctx: SurfaceContext) -> Fraction:
    b = _beta1(t)
    if isinstance(ctx, Projective):
        return b * (b - 1)
    if isinstance(ctx, HirzebruchSpecial):
        return b * (ctx.delta * b + 1)
    return b - ctx.delta


@lru_cache(maxsize=4096)
def rhs_sum(t: DiscreteClass, upto: int | None = None) -> Extended:
    """``sum_{j=1..upto} w_j^2 (b'_{j+1} - 1)``; ``upto`` defaults to g."""
    w = contact_data(t).w
    total = Fraction(0)
    for j in range(1, (t.g if upto is None else upto) + 1):
        total = total + w[j] ** 2 * (t.beta_prime(j + 1) - 1)
    return total


def _verdict(ctx, lhs, rhs, budget) -> Verdict:
    return Verdict(
        context=ctx,
        member=ext_ge(lhs, rhs, budget),
        lhs=lhs,
        rhs=rhs,
        margin=lhs - rhs,
        strict=ext_gt(lhs, rhs, budget),
    )


def classify(t: DiscreteClass, ctx: SurfaceContext, budget: int = DEFAULT_BUDGET) -> Verdict:
    return _verdict(ctx, q_value(t, ctx), rhs_sum(t), budget)


def classify_dual_form(
    t: DiscreteClass, ctx: SurfaceContext, budget: int = DEFAULT_BUDGET
) -> Verdict:
    """Same test written with maximal contact values instead of exponents."""
    _beta1(t)
    bb = contact_data(t).beta_bar
    b0, b1, last = bb[0], bb[1], bb[-1]
    if isinstance(ctx, Projective):
        lhs = Fraction(b1 * b1)
    elif isinstance(ctx, HirzebruchSpecial):
        lhs = Fraction(2 * b0 * b1 + ctx.delta * b1 * b1)
    else:
        lhs = Fraction(2 * b0 * b1 - ctx.delta * b0 * b0)
    return _verdict(ctx, lhs, last, budget)


def _check(cond: bool, what: str) -> None:
    if not cond:
        raise RuntimeError(f"threshold verification failed: {what}")


def _require(tb, what):
    if isinstance(tb, Unknown):
        raise Undecidable(f"{what} undecided at budget", tb.width)
    return tb


def special_min_delta(t: DiscreteClass, budget: int = DEFAULT_BUDGET) -> int:
    """Least ``delta >= 0`` with ``t`` NPI special on F_delta."""
    b = _beta1(t)
    # b(delta b + 1) >= S  <=>  delta >= (S - b) / b^2
    delta = max(0, ext_ceil((rhs_sum(t) - b) / (b * b), budget))
    _check(_require(classify(t, HirzebruchSpecial(delta), budget).member, "membership"), f"special {delta}")
    if delta > 0:
        below = _require(classify(t, HirzebruchSpecial(delta - 1), budget).member, "membership")
        _check(not below, f"special {delta - 1}")
    return delta


def nonspecial_max_delta(t: DiscreteClass, budget: int = DEFAULT_BUDGET) -> int | None:
    """Greatest ``delta >= 1`` with ``t`` NPI non-special on F_delta, or None."""
    b = _beta1(t)
    delta = ext_floor(b - rhs_sum(t), budget)
    if delta < 1:
        one = _require(classify(t, HirzebruchNonSpecial(1), budget).member, "membership")
        _check(not one, "non-special 1")
        return None
    at = _require(classify(t, HirzebruchNonSpecial(delta), budget).member, "membership")
    _check(at, f"non-special {delta}")
    above = _require(classify(t, HirzebruchNonSpecial(delta + 1), budget).member, "membership")
    _check(not above, f"non-special {delta + 1}")
    return delta


@dataclass
class InclusionReport:
    """Outcome of :func:`check_inclusions`.

    ``checked`` counts implications tested per part; ``witnesses`` lists, per
    part, classes in the larger set but not the smaller one (strictness).
    Parts: ``a`` P2 => special(d>0); ``b1`` P2 and b'_1<=2 => special(0);
    ``b2`` special(0) and b'_1>=2 => P2; ``c`` non-special(d>=1) => P2.
    """

    checked: dict = field(default_factory=lambda: {"a": 0, "b1": 0, "b2": 0, "c": 0})
    violations: list = field(default_factory=list)
    undecided: list = field(default_factory=list)
    witnesses: dict = field(default_factory=lambda: {"a": [], "b1": [], "b2": [], "c": []})
    classes: int = 0
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations and not self.undecided


def check_inclusions(
    ts: Iterable[DiscreteClass], deltas: Iterable[int], budget: int = DEFAULT_BUDGET
) -> InclusionReport:
    deltas = sorted(set(deltas))
    report = InclusionReport()
    for t in ts:
        report.classes += 1
        try:
            b1 = _beta1(t)
        except UnsupportedClass:
            report.skipped += 1
            continue
        member = {}
        for ctx in _contexts(deltas):
            m = classify(t, ctx, budget).member
            if isinstance(m, Unknown):
                report.undecided.append((t, ctx))
            member[ctx] = m

        def known(*ctxs):
            return all(not isinstance(member[c], Unknown) for c in ctxs)

        p2 = Projective()
        for d in deltas:
            if d > 0 and known(p2, HirzebruchSpecial(d)):
                report.checked["a"] += 1
                if member[p2] and not member[HirzebruchSpecial(d)]:
                    report.violations.append(("a", t, d))
                if member[HirzebruchSpecial(d)] and not member[p2]:
                    report.witnesses["a"].append((t, d))
            if d >= 1 and known(p2, HirzebruchNonSpecial(d)):
                report.checked["c"] += 1
                if member[HirzebruchNonSpecial(d)] and not member[p2]:
                    report.violations.append(("c", t, d))
                if member[p2] and not member[HirzebruchNonSpecial(d)]:
                    report.witnesses["c"].append((t, d))
        if 0 in deltas and known(p2, HirzebruchSpecial(0)):
            s0 = member[HirzebruchSpecial(0)]
            if b1 <= 2:
                report.checked["b1"] += 1
                if member[p2] and not s0:
                    report.violations.append(("b1", t, 0))
                if s0 and not member[p2]:
                    report.witnesses["b1"].append((t, 0))
            if b1 >= 2:
                report.checked["b2"] += 1
                if s0 and not member[p2]:
                    report.violations.append(("b2", t, 0))
                if member[p2] and not s0:
                    report.witnesses["b2"].append((t, 0))
    if report.violations:
        log.error("inclusion violations: %s", report.violations)
    return report


def _contexts(deltas):
    yield Projective()
    for d in deltas:
        yield HirzebruchSpecial(d)
        if d >= 1:
            yield HirzebruchNonSpecial(d)
