import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bpn import (Atom, Bot, One, Par, Tensor, atoms, format_formula, neg,
                 negate, parse_formula, pos)
from bpn.formulas import BOT, ONE, is_atomic, names


def test_atoms_and_polarity():
    x = pos("X")
    assert x.positive and x.name == "X"
    assert negate(x) == neg("X")
    assert negate(neg("X")) == x


def test_negate_compound():
    f = Tensor(pos("X"), pos("Y"))
    assert negate(f) == Par(neg("X"), neg("Y"))
    assert negate(negate(f)) == f
    assert negate(ONE) == BOT
    assert negate(BOT) == ONE


def test_is_atomic():
    assert is_atomic(pos("X")) and is_atomic(neg("X"))
    assert not is_atomic(ONE)
    assert not is_atomic(Tensor(pos("X"), pos("Y")))


def test_names_and_atoms():
    f = Par(Tensor(pos("X"), neg("Y")), pos("X"))
    assert names(f) == {"X", "Y"}
    assert atoms(f) == [pos("X"), neg("Y"), pos("X")]


def test_format_parse_basic():
    assert format_formula(pos("X")) == "X+"
    assert format_formula(neg("Rain")) == "Rain-"
    assert format_formula(ONE) == "1"
    assert format_formula(BOT) == "bot"
    assert format_formula(Tensor(pos("X"), pos("Y"))) == "(X+ * Y+)"
    assert format_formula(Par(neg("X"), neg("Y"))) == "(X- | Y-)"


def test_parse_errors():
    for bad in ("", "X", "(X+ * Y+", "X+)", "(X+ & Y+)"):
        with pytest.raises(ValueError):
            parse_formula(bad)


formula = st.deferred(lambda: st.one_of(
    st.sampled_from(["X", "Y", "Z"]).map(pos),
    st.sampled_from(["X", "Y", "Z"]).map(neg),
    st.just(ONE), st.just(BOT),
    st.tuples(formula, formula).map(lambda p: Tensor(*p)),
    st.tuples(formula, formula).map(lambda p: Par(*p)),
))


@settings(max_examples=100, deadline=None)
@given(formula)
def test_format_parse_round_trip(f):
    assert parse_formula(format_formula(f)) == f


@settings(max_examples=100, deadline=None)
@given(formula)
def test_negate_involutive(f):
    assert negate(negate(f)) == f
