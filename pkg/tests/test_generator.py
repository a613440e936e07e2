from fractions import Fraction
from itertools import islice

import pytest

from npiclass import (
    HirzebruchSpecial as S,
    NotExtensible,
    Projective,
    RejectedChoice,
    Undecidable,
    chain,
    check_input,
    classify,
    classify_dual_form,
    output1,
    output2_integer,
    output2_irrational,
    parse_class,
)
from npiclass.generator import (
    Enumerate,
    Irrational,
    MaxIntegerTail,
    Single,
    TailChoice,
    parse_strategy,
)
from npiclass.numeric import DomainError

P2 = Projective()


def sound(t, ctx):
    return classify(t, ctx).member is True and classify_dual_form(t, ctx).member is True


def test_check_input(ex1, ex2):
    line = check_input(ex1, P2)
    assert (line.q, line.bound) == (Fraction(15, 4), 366)
    assert check_input(ex2, S(2)).bound == 6355
    with pytest.raises(NotExtensible) as ei:
        check_input(parse_class("2; 4/3, 17/3, 1"), P2)
    assert ei.value.deficit is not None


def test_single(ex1):
    (new,) = output1(ex1, P2, Single(Fraction(8, 3)))
    assert new == parse_class("3; 5/2, 7/5, 8/3, 1")
    assert sound(new, P2)


def test_boundary_and_rejections(ex1):
    # the bound itself is admissible when non-integral; anything above is not
    (new,) = output1(ex1, P2, Single(Fraction(731, 2)))
    assert sound(new, P2)
    for bad in [Fraction(735, 2), Fraction(733, 2), Fraction(3), Fraction(1, 2)]:
        with pytest.raises(RejectedChoice):
            output1(ex1, P2, Single(bad))


def test_enumerate_order(ex1):
    got = list(islice(output1(ex1, P2, Enumerate(3)), 5))
    assert got[0] == parse_class("3; 5/2, 7/5, 3/2, 1")
    keys = [(c.beta_prime(3).denominator, c.beta_prime(3).numerator) for c in got]
    assert keys == sorted(keys)
    assert all(sound(c, P2) for c in got)


def test_enumerate_finite_with_limit():
    t = parse_class("1; 3/2, 1")
    B = check_input(t, P2).bound
    got = list(output1(t, P2, Enumerate(4)))
    assert got and all(1 < c.beta_prime(2) <= B for c in got)


def test_irrational(ex1, ex2):
    new = output2_irrational(ex2, S(2), Irrational("pi"))
    assert str(new) == "3; 5/3, 12/5, 5/2, pi"
    assert sound(new, S(2))
    assert str(output2_irrational(ex1, P2, Irrational("phi"))) == "2; 5/2, 7/5, phi"
    with pytest.raises(RejectedChoice):
        output2_irrational(ex1, P2, Irrational("sqrt:1/2"))
    with pytest.raises(RejectedChoice):
        output2_irrational(ex1, P2, Irrational("400+phi"))
    with pytest.raises(Undecidable):
        output2_irrational(ex1, P2, Irrational("interval:300:400"))


def test_integer_tail():
    t1 = parse_class("3; 5/2, 7/5, 8/3, 1")
    res = output2_integer(t1, P2)
    assert (res.capacity, res.max_tail) == (3270, 3271)
    assert sound(res.result, P2)
    res = output2_integer(t1, P2, TailChoice(3200))
    assert res.result == parse_class("3; 5/2, 7/5, 8/3, 3200")
    with pytest.raises(RejectedChoice):
        output2_integer(t1, P2, TailChoice(3272))


def test_integer_tail_small_capacity():
    # q = 3/4, w_1^2 = 1/4: C = 3
    res = output2_integer(parse_class("1; 3/2, 1"), P2)
    assert (res.capacity, res.max_tail) == (3, 4)
    assert res.result == parse_class("1; 3/2, 4")
    # 9/2 exceeds the Output-1 bound 4, so the class is not NPI
    with pytest.raises(NotExtensible):
        output2_integer(parse_class("2; 3/2, 9/2, 1"), P2)


def test_chain():
    tr = chain(parse_class("1; 5/2, 1"), P2, [Single(Fraction(7, 5)), Single(Fraction(8, 3))])
    assert [s.bound for s in tr.steps] == [16, 366]
    assert tr.classes[-1] == parse_class("3; 5/2, 7/5, 8/3, 1")
    assert tr.stopped is None
    tr = chain(parse_class("0; 2"), P2, [Single(Fraction(3, 2))])
    assert tr.steps[0].bound == 3 and tr.classes == [parse_class("1; 3/2, 1")]
    tr = chain(parse_class("2; 4/3, 17/3, 1"), P2, [Single(Fraction(3, 2))])
    assert tr.steps == [] and isinstance(tr.stopped, NotExtensible)


def test_chain_deterministic():
    script = [Enumerate(), Enumerate(), Enumerate()]
    a = chain(parse_class("1; 5/2, 1"), P2, script)
    b = chain(parse_class("1; 5/2, 1"), P2, script)
    assert a.classes == b.classes and len(a.classes) == 3


def test_strategy_tokens():
    assert parse_strategy("single:8/3") == Single(Fraction(8, 3))
    assert parse_strategy("enumerate:5") == Enumerate(5)
    assert parse_strategy("irrational:pi") == Irrational("pi")
    assert parse_strategy("tail:3200") == TailChoice(3200)
    assert parse_strategy("max-integer-tail") == MaxIntegerTail()
    with pytest.raises(DomainError):
        parse_strategy("random")


def test_seed_must_end_in_one():
    with pytest.raises(DomainError):
        check_input(parse_class("1; 5/2, 3"), P2)
