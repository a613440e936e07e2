from fractions import Fraction

import pytest

from npiclass import (
    HirzebruchNonSpecial as NS,
    HirzebruchSpecial as S,
    Projective,
    Unknown,
    check_inclusions,
    classify,
    classify_dual_form,
    nonspecial_max_delta,
    parse_class,
    parse_exponent,
    parse_surface,
    special_min_delta,
)
from npiclass.numeric import DomainError
from npiclass.npi import UnsupportedClass, q_value, rhs_sum

P2 = Projective()
PHI = parse_exponent("phi")


def test_q_values(ex1, ex2):
    assert q_value(ex1, P2) == Fraction(15, 4)
    assert q_value(ex2, S(2)) == Fraction(65, 9)
    assert q_value(parse_class("2; 5/2, 57/5, phi"), NS(1)) == Fraction(3, 2)


def test_rhs_sums(ex1):
    assert rhs_sum(ex1) == Fraction(1, 10)
    assert rhs_sum(parse_class("3; 7/3, 43/2, 14/3, 1")) == Fraction(257, 108)
    assert rhs_sum(parse_class("2; 5/2, 57/5, phi")) == Fraction(52, 20) + (PHI - 1) / 100


def test_example1(ex1):
    v = classify(ex1, P2)
    assert v.member is True and v.strict is True
    assert (v.lhs, v.rhs) == (Fraction(15, 4), Fraction(1, 10))
    d = classify_dual_form(ex1, P2)
    assert (d.member, d.lhs, d.rhs) == (True, 625, 260)


def test_example2(ex2):
    v = classify(ex2, S(2))
    assert (v.member, v.lhs, v.rhs) == (True, Fraction(65, 9), Fraction(73, 450))


def test_projective_not_special_witness():
    t = parse_class("2; 4/3, 17/3, 1")
    v = classify(t, P2)
    assert v.member is False
    assert (v.lhs, v.rhs) == (Fraction(12, 27), Fraction(14, 27))
    assert classify_dual_form(t, P2).member is False
    for d in range(6):
        v = classify(t, S(d))
        assert v.member is True
        assert v.lhs == Fraction(48 * d + 36, 27)


def test_special0_not_projective_witness():
    t = parse_class("3; 7/3, 43/2, 14/3, 1")
    v = classify(t, P2)
    assert v.member is True and v.lhs == Fraction(336, 108)
    v0 = classify(t, S(0))
    assert v0.member is False and v0.lhs == Fraction(252, 108)


def test_irrational_nonspecial_witness():
    t = parse_class("2; 5/2, 57/5, phi")
    v = classify(t, P2)
    assert v.member is True and v.lhs == Fraction(75, 20)
    for d in range(1, 6):
        assert classify(t, NS(d)).member is False
        assert classify_dual_form(t, NS(d)).member is False


def test_g0_always_projective():
    for m in range(1, 20):
        assert classify(parse_class(f"0; {m}"), P2).member is True
        assert classify_dual_form(parse_class(f"0; {m}"), P2).member is True


def test_thresholds():
    assert special_min_delta(parse_class("2; 4/3, 17/3, 1")) == 0
    assert special_min_delta(parse_class("3; 7/3, 43/2, 14/3, 1")) == 1
    assert special_min_delta(parse_class("0; 5")) == 0
    assert nonspecial_max_delta(parse_class("2; 5/2, 57/5, phi")) is None
    assert nonspecial_max_delta(parse_class("0; 7")) == 7
    # 5/2 - d >= 0 holds for d = 2 and fails for d = 3
    t = parse_class("1; 5/2, 1")
    assert nonspecial_max_delta(t) == 2
    assert classify(t, NS(2)).member is True
    assert classify(t, NS(3)).member is False


def test_thresholds_are_sharp():
    for s in ["1; 3/2, 4", "2; 7/3, 9/2, 2", "1; 11/4, 3", "2; 4/3, 17/3, 1"]:
        t = parse_class(s)
        d = special_min_delta(t)
        assert classify(t, S(d)).member is True
        if d > 0:
            assert classify(t, S(d - 1)).member is False
        m = nonspecial_max_delta(t)
        if m is not None:
            assert classify(t, NS(m)).member is True
            assert classify(t, NS(m + 1)).member is False


def test_unknown_at_tiny_budget():
    # rhs = (b - 1)/4 lies in (1/4, 19/4) and the interval cannot be narrowed
    t = parse_class("1; 5/2, interval:2:20")
    v = classify(t, NS(1))
    assert isinstance(v.member, Unknown)


def test_surface_tokens():
    assert parse_surface("p2") == P2
    assert parse_surface("special:3") == S(3)
    assert parse_surface("nonspecial:1") == NS(1)
    for bad in ["nonspecial:0", "special:-1", "torus", "special:x"]:
        with pytest.raises(DomainError):
            parse_surface(bad)


def test_g0_irrational_unsupported():
    with pytest.raises(UnsupportedClass):
        classify(parse_class("0; phi"), P2)


def test_inclusion_witnesses():
    rep = check_inclusions([parse_class("2; 4/3, 17/3, 1")], range(1, 5))
    assert rep.ok and len(rep.witnesses["a"]) == 4
    rep = check_inclusions([parse_class("3; 7/3, 43/2, 14/3, 1")], range(0, 5))
    assert rep.ok and rep.witnesses["b2"]
    rep = check_inclusions([parse_class("2; 5/2, 57/5, phi")], range(1, 5))
    assert rep.ok and len(rep.witnesses["c"]) == 4
