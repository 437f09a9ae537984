import itertools

import pytest
from hypothesis import given, strategies as st

from selfsim.groups import FiniteGroup, FreeGroup, Integers, WordError, make_backend, trivial_group
from selfsim.ugroup import BaumslagSolitar


BACKENDS = [Integers("z"), FiniteGroup.cyclic(3), FreeGroup(["x", "y"]), BaumslagSolitar(2),
            BaumslagSolitar(3), trivial_group()]


@pytest.mark.parametrize("grp", BACKENDS, ids=lambda g: g.name)
def test_group_laws_on_ball(grp):
    ball = grp.ball(2)
    one = grp.identity
    for a in ball:
        assert grp.mul(a, one) == a == grp.mul(one, a)
        assert grp.mul(a, grp.inv(a)) == one
        assert grp.word_value(grp.factor(a)) == a
        assert grp.parse(grp.render(a)) == a
    for a, b, c in itertools.product(ball[:7], repeat=3):
        assert grp.mul(grp.mul(a, b), c) == grp.mul(a, grp.mul(b, c))


@pytest.mark.parametrize("grp", BACKENDS, ids=lambda g: g.name)
def test_ball_nesting(grp):
    assert grp.ball(0) == [grp.identity]
    for r in range(3):
        small, big = grp.ball(r), grp.ball(r + 1)
        assert set(small) <= set(big)
        assert len(set(big)) == len(big)


def test_free_group_ball_size():
    # 1 + 4 + 12 reduced words of length <= 2 on two letters
    assert len(FreeGroup(["x", "y"]).ball(2)) == 17


def test_parse_word_errors():
    with pytest.raises(WordError):
        Integers("z").parse("w")
    assert Integers("z").parse("z^-1 z^-1") == -2
    assert Integers("z").parse("z^3") == 3


def test_make_backend():
    assert make_backend("integers", {"generator": "u"}).generator_names == ("u",)
    assert make_backend("cyclic", {"order": 4}).parse("t^4") == make_backend("cyclic", {"order": 4}).identity
    with pytest.raises(ValueError):
        make_backend("nope", {})


# -- BS(1, n) in Z[1/n] ⋊ Z coordinates ------------------------------------------

def bs_elements(n):
    return st.builds(lambda num, e, k: BaumslagSolitar(n).make(num, e, k),
                     st.integers(-50, 50), st.integers(0, 4), st.integers(-4, 4))


@given(bs_elements(2), bs_elements(2), bs_elements(2))
def test_bs_associative_and_inverse(a, b, c):
    bs = BaumslagSolitar(2)
    assert bs.mul(bs.mul(a, b), c) == bs.mul(a, bs.mul(b, c))
    assert bs.mul(a, bs.inv(a)) == bs.identity == bs.mul(bs.inv(a), a)


@given(bs_elements(3), bs_elements(3))
def test_bs_product_law_in_rationals(a, b):
    from fractions import Fraction
    bs = BaumslagSolitar(3)

    def q(x):
        return Fraction(x.q_num, 3 ** x.q_exp)
    ab = bs.mul(a, b)
    assert q(ab) == q(a) + Fraction(3) ** a.k * q(b)
    assert ab.k == a.k + b.k


@pytest.mark.parametrize("n", [2, 3, 4])
def test_bs_defining_relation(n):
    bs = BaumslagSolitar(n)
    a0, Z = bs.make(0, 0, 1), bs.make(1, 0, 0)
    assert bs.product([bs.inv(a0), bs.power(Z, n), a0]) == Z


def test_bs_reduced_storage():
    bs = BaumslagSolitar(2)
    assert bs.make(4, 2, 0) == bs.make(1, 0, 0)
    assert bs.render(bs.make(1, 0, 0)) == "(1, 0)"
    assert bs.parse("(1, 0)") == bs.make(1, 0, 0)
