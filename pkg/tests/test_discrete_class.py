import math
import random
from fractions import Fraction

import pytest

from npiclass import (
    InvalidClass,
    ValuationKind,
    contact_data,
    last_contact_closed_form,
    normalized_ratio,
    parse_class,
    parse_exponent,
    validate,
)


def semigroup_oracle(exps):
    """Maximal contact values from integer characteristic exponents.

    Independent route: n = product of denominators, characteristic exponents
    m_j = n * (cumulative Puiseux exponent), e_j = gcd(n, m_1..m_j), then the
    classical semigroup recursion.
    """
    g = len(exps) - 1
    if g == 0:
        return (1,), (1, exps[0])
    n = math.prod(Fraction(b).denominator for b in exps[:g])
    # Puiseux exponents: b'_1 then increments scaled by e_{j}/n
    m = [n]
    e = [n]
    cum = Fraction(0)
    for j, b in enumerate(exps[:g]):
        step = b if j == 0 else (b - 1) * Fraction(e[-1], n)
        cum += step
        m.append(int(cum * n))
        e.append(math.gcd(e[-1], m[-1]))
    bb = [m[0], m[1]]
    for j in range(1, g):
        bb.append(e[j - 1] // e[j] * bb[j] + m[j + 1] - m[j])
    bb.append(e[g - 1] // e[g] * bb[g] + e[g] * (exps[g] - 1))
    return tuple(e), tuple(bb)


def test_valid_examples():
    assert validate((2, 1, Fraction(5, 2), Fraction(7, 5), 1)).kind is ValuationKind.DIVISORIAL
    t = validate((2, 1, Fraction(5, 2), Fraction(57, 5), parse_exponent("phi")))
    assert t.kind is ValuationKind.IRRATIONAL


@pytest.mark.parametrize(
    "raw",
    [
        (1, 1, 3, 1),
        (1, 1, Fraction(5, 2), Fraction(3, 2)),
        (1, 2, Fraction(5, 2), 1),
        (2, 1, Fraction(5, 2), 1),
        (1, 1, Fraction(1, 2), 1),
        (1, 1, Fraction(5, 2), 0),
        (-1, 1),
    ],
)
def test_invalid(raw):
    with pytest.raises(InvalidClass) as ei:
        validate(raw)
    assert ei.value.violations


def test_invalid_reports_every_rule():
    with pytest.raises(InvalidClass) as ei:
        validate((2, 1, 3, Fraction(1, 2), Fraction(3, 2)))
    assert len(ei.value.violations) == 3


def test_parse_and_str_round_trip():
    for s in ["2; 5/2, 7/5, 1", "0; 7", "2; 5/2, 57/5, phi", "1; 3/2, sqrt:2"]:
        assert str(parse_class(s)) == s
        assert parse_class(str(parse_class(s))) == parse_class(s)


def test_contact_example1(ex1):
    cd = contact_data(ex1)
    assert cd.e == (10, 5, 1)
    assert cd.beta_bar == (10, 25, 52, 260)
    assert cd.w == (1, Fraction(1, 2), Fraction(1, 10))
    assert last_contact_closed_form(ex1) == 260
    assert normalized_ratio(ex1) == Fraction(13, 5)


def test_contact_example2(ex2):
    assert contact_data(ex2).e == (30, 10, 2, 1)


@pytest.mark.parametrize(
    "s, expected",
    [("0; 4", 4), ("1; 5/2, 1", 10)],
)
def test_closed_form_small(s, expected):
    assert last_contact_closed_form(parse_class(s)) == expected


def test_normalized_ratios():
    assert normalized_ratio(parse_class("0; 9")) == 9
    assert normalized_ratio(parse_class("3; 7/3, 43/2, 14/3, 1")) == Fraction(509, 108)


def test_contact_values_4_3_case():
    cd = contact_data(parse_class("2; 4/3, 17/3, 1"))
    assert cd.beta_bar[:3] == (9, 12, 50)
    assert cd.beta_bar[3] == 150


def _random_class(rng, irrational=False):
    g = rng.randint(0, 3)
    exps = []
    for _ in range(g):
        while True:
            p, q = rng.randint(2, 7), rng.randint(3, 30)
            if q > p and math.gcd(p, q) == 1:
                exps.append(Fraction(q, p))
                break
    exps.append(parse_exponent(rng.choice(["phi", "sqrt:2", "pi", "sqrt:7"])) if irrational else Fraction(rng.randint(1, 30)))
    return validate((g, 1, *exps))


def test_recursion_matches_semigroup_oracle():
    rng = random.Random(7)
    for _ in range(500):
        t = _random_class(rng)
        e, bb = semigroup_oracle(t.exponents)
        cd = contact_data(t)
        assert cd.e == e
        assert cd.beta_bar == bb
        assert cd.beta_bar[-1] == last_contact_closed_form(t)


def test_irrational_closed_form():
    rng = random.Random(11)
    for _ in range(200):
        t = _random_class(rng, irrational=True)
        assert contact_data(t).beta_bar[-1] == last_contact_closed_form(t)
