"""Exact rationals, continued fractions and certified irrational enclosures.

Rationals are :class:`fractions.Fraction`.  Irrationals are affine images
``offset + scale * c`` of a named constant ``c`` (golden ratio, square roots,
pi, or a user-supplied interval), carried together with a rational enclosure
of ``c`` that can be narrowed on demand.  Keeping the affine form exact means
that any quantity that depends linearly on a single irrational exponent can be
compared with a rational after a finite number of refinements.

Nothing in this module touches floating point except :meth:`__float__`, which
exists for human-readable output only.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Union

__all__ = [
    "DEFAULT_BUDGET",
    "CertifiedIrrational",
    "Comparison",
    "Constant",
    "DomainError",
    "Extended",
    "Golden",
    "Pi",
    "Sqrt",
    "Undecidable",
    "Unknown",
    "UserInterval",
    "cf_eval",
    "cf_expand",
    "cf_expand_prefix",
    "ext_ceil",
    "ext_compare",
    "ext_floor",
    "ext_ge",
    "ext_gt",
    "ext_sign",
    "format_exponent",
    "is_integer",
    "parse_exponent",
    "parse_rational",
]

DEFAULT_BUDGET = 256


class DomainError(ValueError):
    """Argument outside the domain of an operation."""


class Undecidable(ArithmeticError):
    """A certified decision could not be reached within the refinement budget."""

    def __init__(self, message: str, width: Fraction | None = None):
        super().__init__(message)
        self.width = width


@dataclass(frozen=True)
class Unknown:
    """Third truth value: the enclosure was still too wide to decide.

    Using it in a boolean context is an error, so an undecided comparison can
    never be silently read as True or False.
    """

    width: Fraction

    def __bool__(self):
        raise TypeError(f"undecided comparison (enclosure width {self.width})")


TriBool = Union[bool, Unknown]


class Comparison(NamedTuple):
    lt: TriBool
    eq: TriBool
    gt: TriBool


def is_integer(x) -> bool:
    return isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1)


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# continued fractions


def cf_expand(x) -> tuple[int, ...]:
    """Canonical continued-fraction digits of a rational ``x >= 1``.

    >>> cf_expand(Fraction(7, 5))
    (1, 2, 2)
    """
    if isinstance(x, CertifiedIrrational):
        raise DomainError("cf_expand needs a rational; use cf_expand_prefix")
    x = _q(x)
    if x < 1:
        raise DomainError(f"continued fraction expansion needs x >= 1, got {x}")
    num, den = x.numerator, x.denominator
    digits = []
    while den:
        a, r = divmod(num, den)
        digits.append(a)
        num, den = den, r
    return tuple(digits)


def cf_eval(digits) -> Fraction:
    """Value of ``<a1; a2, ..., ar>``."""
    digits = list(digits)
    if not digits:
        raise DomainError("empty continued fraction")
    value = Fraction(digits[-1])
    for a in reversed(digits[:-1]):
        value = a + 1 / value
    return value


# ---------------------------------------------------------------------------
# named constants


def _dyadic_outward(lo: Fraction, hi: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    scale = 1 << bits
    return (
        Fraction(math.floor(lo * scale), scale),
        Fraction(math.ceil(hi * scale), scale),
    )


class Constant:
    """A real constant known to be irrational, with enclosures on demand.

    Subclasses provide :attr:`token`, :meth:`initial` and :meth:`_enclose`,
    where ``_enclose(k)`` returns ``(lo, hi)`` with ``lo < value < hi`` and
    ``hi - lo <= 2**-k``.
    """

    refinable = True

    @property
    def token(self) -> str:  # pragma: no cover - abstract
        raise NotImplementedError

    def initial(self) -> tuple[Fraction, Fraction]:
        return self.enclose(0)

    def enclose(self, k: int) -> tuple[Fraction, Fraction]:
        return _cached_enclosure(self, k)

    def _enclose(self, k: int) -> tuple[Fraction, Fraction]:  # pragma: no cover
        raise NotImplementedError

    def __str__(self):
        return self.token


@lru_cache(maxsize=4096)
def _cached_enclosure(const: Constant, k: int) -> tuple[Fraction, Fraction]:
    return const._enclose(k)


@dataclass(frozen=True)
class Sqrt(Constant):
    """Square root of a positive rational that is not a perfect square."""

    radicand: Fraction

    def __post_init__(self):
        r = _q(self.radicand)
        object.__setattr__(self, "radicand", r)
        if r <= 0:
            raise DomainError(f"sqrt needs a positive radicand, got {r}")
        if math.isqrt(r.numerator) ** 2 == r.numerator and (
            math.isqrt(r.denominator) ** 2 == r.denominator
        ):
            raise DomainError(f"sqrt({r}) is rational")

    @property
    def token(self):
        return f"sqrt:{self.radicand}"

    def _enclose(self, k):
        a, b = self.radicand.numerator, self.radicand.denominator
        # sqrt(a/b) = sqrt(a*b)/b; floor and floor+1 bracket strictly since a*b
        # is not a square.
        bits = max(0, k - (b.bit_length() - 1))
        scale = 1 << bits
        s = math.isqrt(a * b * scale * scale)
        return Fraction(s, b * scale), Fraction(s + 1, b * scale)


@dataclass(frozen=True)
class Golden(Constant):
    """The golden ratio (1 + sqrt 5) / 2."""

    @property
    def token(self):
        return "phi"

    def initial(self):
        return Fraction(1), Fraction(2)

    def _enclose(self, k):
        lo, hi = Sqrt(Fraction(5)).enclose(k + 1)
        return (1 + lo) / 2, (1 + hi) / 2


def _atan_inv_bounds(x: int, eps: Fraction) -> tuple[Fraction, Fraction]:
    # Alternating series with strictly decreasing terms: consecutive partial
    # sums bracket arctan(1/x) strictly.
    total = Fraction(0)
    k = 0
    while True:
        term = Fraction(1, (2 * k + 1) * x ** (2 * k + 1))
        nxt = total + term if k % 2 == 0 else total - term
        if term <= eps and k > 0:
            return (min(total, nxt), max(total, nxt))
        total = nxt
        k += 1


@dataclass(frozen=True)
class Pi(Constant):
    @property
    def token(self):
        return "pi"

    def initial(self):
        return Fraction(3), Fraction(4)

    def _enclose(self, k):
        eps = Fraction(1, 1 << (k + 6))
        lo5, hi5 = _atan_inv_bounds(5, eps)
        lo239, hi239 = _atan_inv_bounds(239, eps)
        lo = 16 * lo5 - 4 * hi239
        hi = 16 * hi5 - 4 * lo239
        return _dyadic_outward(lo, hi, k + 2)


@dataclass(frozen=True)
class UserInterval(Constant):
    """An irrational asserted by the caller to lie strictly inside (lo, hi).

    The enclosure cannot be narrowed: refinement leaves it unchanged, so
    comparisons against values inside the interval stay undecided.
    """

    lo: Fraction
    hi: Fraction
    refinable = False

    def __post_init__(self):
        object.__setattr__(self, "lo", _q(self.lo))
        object.__setattr__(self, "hi", _q(self.hi))
        if not self.lo < self.hi:
            raise DomainError(f"empty interval ({self.lo}, {self.hi})")

    @property
    def token(self):
        return f"interval:{self.lo}:{self.hi}"

    def initial(self):
        return self.lo, self.hi

    def _enclose(self, k):
        return self.lo, self.hi


PHI = Golden()
PI = Pi()


# ---------------------------------------------------------------------------
# certified irrationals


@dataclass(frozen=True, eq=False)
class CertifiedIrrational:
    """The irrational ``offset + scale * base`` with a refinable enclosure.

    ``lo``/``hi`` enclose ``base`` (not the affine image).  Equality and
    hashing ignore the enclosure: two values are equal iff they share base,
    scale and offset.
    """

    base: Constant
    scale: Fraction = Fraction(1)
    offset: Fraction = Fraction(0)
    lo: Fraction = field(default=None)
    hi: Fraction = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "scale", _q(self.scale))
        object.__setattr__(self, "offset", _q(self.offset))
        if self.scale == 0:
            raise DomainError("zero scale collapses to a rational")
        if self.lo is None or self.hi is None:
            lo, hi = self.base.initial()
            object.__setattr__(self, "lo", lo)
            object.__setattr__(self, "hi", hi)

    @classmethod
    def of(cls, base: Constant) -> CertifiedIrrational:
        return cls(base)

    # -- enclosure ------------------------------------------------------
    @property
    def enclosure(self) -> tuple[Fraction, Fraction]:
        a = self.offset + self.scale * self.lo
        b = self.offset + self.scale * self.hi
        return (a, b) if a < b else (b, a)

    @property
    def width(self) -> Fraction:
        lo, hi = self.enclosure
        return hi - lo

    def refine(self) -> CertifiedIrrational:
        """Return the same value with a base enclosure at most half as wide."""
        if not self.base.refinable:
            return self
        target = (self.hi - self.lo) / 2
        # smallest k with 2**-k <= target
        k = (-(-target.denominator // target.numerator) - 1).bit_length()
        lo, hi = self.base.enclose(k)
        return replace(self, lo=max(lo, self.lo), hi=min(hi, self.hi))

    def refined_to(self, width: Fraction, budget: int = DEFAULT_BUDGET) -> CertifiedIrrational:
        x = self
        for _ in range(budget):
            if x.width <= width:
                break
            x = x.refine()
        return x

    # -- exact affine arithmetic ---------------------------------------
    def _affine(self, scale, offset):
        if scale == 0:
            return Fraction(offset)
        return replace(self, scale=Fraction(scale), offset=Fraction(offset))

    def __add__(self, other):
        if isinstance(other, CertifiedIrrational):
            if other.base != self.base:
                return NotImplemented
            return self._affine(self.scale + other.scale, self.offset + other.offset)
        if isinstance(other, (int, Fraction)):
            return self._affine(self.scale, self.offset + other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return self._affine(-self.scale, -self.offset)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CertifiedIrrational)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._affine(self.scale * other, self.offset * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, CertifiedIrrational):
            return (self.base, self.scale, self.offset) == (other.base, other.scale, other.offset)
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash((self.base, self.scale, self.offset))

    def __float__(self):
        lo, hi = self.refined_to(Fraction(1, 1 << 60), budget=80).enclosure
        return float((lo + hi) / 2)

    def __str__(self):
        return format_exponent(self)

    def __repr__(self):
        return f"CertifiedIrrational({format_exponent(self)!r})"


Extended = Union[Fraction, CertifiedIrrational]


def ext_sign(x, budget: int = DEFAULT_BUDGET) -> int | Unknown:
    """Sign of an extended value; irrationals are never zero."""
    if not isinstance(x, CertifiedIrrational):
        x = _q(x)
        return (x > 0) - (x < 0)
    for _ in range(budget + 1):
        lo, hi = x.enclosure
        if lo >= 0:
            return 1
        if hi <= 0:
            return -1
        nxt = x.refine()
        if nxt is x:
            break
        x = nxt
    return Unknown(x.width)


def ext_compare(a, b, budget: int = DEFAULT_BUDGET) -> Comparison:
    """Three-valued comparison of two extended values.

    An irrational is never equal to a rational, so ``eq`` is decided without
    refinement whenever exactly one side is irrational.
    """
    diff = a - b
    if not isinstance(diff, CertifiedIrrational):
        diff = _q(diff)
        return Comparison(diff < 0, diff == 0, diff > 0)
    s = ext_sign(diff, budget)
    if isinstance(s, Unknown):
        return Comparison(s, False, s)
    return Comparison(s < 0, False, s > 0)


def _negate(t: TriBool) -> TriBool:
    return t if isinstance(t, Unknown) else not t


def ext_ge(a, b, budget: int = DEFAULT_BUDGET) -> TriBool:
    return _negate(ext_compare(a, b, budget).lt)


def ext_gt(a, b, budget: int = DEFAULT_BUDGET) -> TriBool:
    return ext_compare(a, b, budget).gt


def ext_floor(x, budget: int = DEFAULT_BUDGET) -> int:
    """Certified floor; raises :class:`Undecidable` if the budget runs out."""
    if not isinstance(x, CertifiedIrrational):
        return math.floor(_q(x))
    for _ in range(budget + 1):
        lo, hi = x.enclosure
        f = math.floor(lo)
        if hi <= f + 1:
            return f
        nxt = x.refine()
        if nxt is x:
            break
        x = nxt
    raise Undecidable(f"floor of {format_exponent(x)} undecided", x.width)


def ext_ceil(x, budget: int = DEFAULT_BUDGET) -> int:
    if not isinstance(x, CertifiedIrrational):
        return math.ceil(_q(x))
    return ext_floor(x, budget) + 1


def cf_expand_prefix(a, k: int, budget: int = DEFAULT_BUDGET) -> tuple[int, ...]:
    """First ``k`` continued-fraction digits of an irrational ``a > 1``.

    A digit is emitted only when the whole enclosure maps to the same digit,
    so every returned digit is the true one.
    """
    if not isinstance(a, CertifiedIrrational):
        raise DomainError("cf_expand_prefix needs an irrational value; use cf_expand")
    if k < 1:
        raise DomainError("k must be positive")
    sign = ext_ge(a, 1, budget)
    if isinstance(sign, Unknown) or not sign:
        raise DomainError(f"{format_exponent(a)} is not certified > 1")
    best: tuple[int, ...] = ()
    x = a
    for _ in range(budget + 1):
        digits = _certified_digits(*x.enclosure, k)
        if len(digits) > len(best):
            best = digits
        if len(best) >= k:
            return best[:k]
        nxt = x.refine()
        if nxt is x:
            break
        x = nxt
    raise Undecidable(
        f"digit {len(best) + 1} of {format_exponent(a)} not certified within budget", x.width
    )


def _certified_digits(lo: Fraction, hi: Fraction, k: int) -> tuple[int, ...]:
    # Invariant: the value v satisfies lo < v < hi (or lo <= v < hi after the
    # first step, which is still enough because v stays irrational).
    digits = []
    while len(digits) < k:
        d = math.floor(lo)
        if hi > d + 1:
            break
        digits.append(d)
        if len(digits) == k:
            break
        lo_frac, hi_frac = lo - d, hi - d
        if lo_frac == 0:
            break
        lo, hi = 1 / hi_frac, 1 / lo_frac
    return tuple(digits)


# ---------------------------------------------------------------------------
# textual forms

_RAT = r"-?\d+(?:/\d+)?"
_AFFINE = re.compile(
    rf"^(?:(?P<off>{_RAT})(?P<sign>[+-]))?(?:(?P<scale>-?\d+(?:/\d+)?)\*)?(?P<tok>phi|pi|sqrt:\S+|interval:\S+)$"
)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(_RAT, text):
        raise DomainError(f"not a rational token: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise DomainError(f"zero denominator in {text!r}") from None


def _parse_constant(tok: str) -> Constant:
    if tok == "phi":
        return PHI
    if tok == "pi":
        return PI
    if tok.startswith("sqrt:"):
        return Sqrt(parse_rational(tok[5:]))
    if tok.startswith("interval:"):
        parts = tok.split(":")
        if len(parts) != 3:
            raise DomainError(f"interval token needs lo and hi: {tok!r}")
        return UserInterval(parse_rational(parts[1]), parse_rational(parts[2]))
    raise DomainError(f"unknown constant token {tok!r}")


def parse_exponent(text: str) -> Extended:
    """Parse ``"q/p"``, ``"n"``, a constant token, or an affine form such as
    ``"13/5+1/100*phi"``."""
    text = text.strip().replace(" ", "")
    if re.fullmatch(_RAT, text):
        return parse_rational(text)
    m = _AFFINE.match(text)
    if not m:
        raise DomainError(f"not an exponent token: {text!r}")
    base = _parse_constant(m["tok"])
    scale = parse_rational(m["scale"]) if m["scale"] else Fraction(1)
    offset = Fraction(0)
    if m["off"] is not None:
        offset = parse_rational(m["off"])
        if m["sign"] == "-":
            scale = -scale
    if scale == 0:
        return offset
    return CertifiedIrrational(base, scale, offset)


def format_exponent(x) -> str:
    """Exact token for a rational or irrational value (inverse of parse)."""
    if not isinstance(x, CertifiedIrrational):
        return str(_q(x))
    tok = x.base.token
    scale, offset = x.scale, x.offset
    if offset == 0:
        if scale == 1:
            return tok
        return f"{scale}*{tok}"
    sign = "+" if scale > 0 else "-"
    mag = abs(scale)
    body = tok if mag == 1 else f"{mag}*{tok}"
    return f"{offset}{sign}{body}"
