import pytest
from hypothesis import given
from hypothesis import strategies as st

from bmw2k.words import (
    NonInvertibleGenerator,
    Token,
    WordSyntaxError,
    ZeroExponent,
    expand_word,
    format_word,
    make_word,
    parse_word,
    reverse_word,
)


def test_parse_examples():
    assert parse_word("Y^2 X e") == (("Y", 2), ("X", 1), ("e", 1))
    assert parse_word("X^-1 Y^-3") == (("X", -1), ("Y", -3))
    assert parse_word("YXYe") == parse_word("Y X Y e")
    assert parse_word("") == ()
    assert parse_word("  X  ") == (Token("X"),)


def test_format_examples():
    assert format_word([("Y", 2), ("X", 1)]) == "Y^2 X"
    assert format_word([]) == ""
    assert format_word([("X", -1)]) == "X^-1"


def test_no_merging_of_repeats():
    assert parse_word("Y Y") == (("Y", 1), ("Y", 1))


def test_errors():
    with pytest.raises(NonInvertibleGenerator):
        parse_word("e^-1")
    with pytest.raises(ZeroExponent):
        parse_word("X^0")
    with pytest.raises(WordSyntaxError) as info:
        parse_word("X Z")
    assert info.value.pos == 2
    assert isinstance(info.value, SyntaxError)
    with pytest.raises(WordSyntaxError):
        parse_word("X^")
    with pytest.raises(WordSyntaxError):
        parse_word("Y^-")
    with pytest.raises(NonInvertibleGenerator):
        make_word([("e", -2)])


def test_expand_and_reverse():
    w = parse_word("Y^-2 X e^2")
    assert format_word(expand_word(w)) == "Y^-1 Y^-1 X e e"
    assert format_word(reverse_word(w)) == "e^2 X Y^-2"


token = st.one_of(
    st.tuples(st.sampled_from("XY"), st.integers(-50, 50).filter(bool)),
    st.tuples(st.just("e"), st.integers(1, 50)),
)
word = st.lists(token, max_size=8).map(make_word)


@given(word)
def test_round_trip(w):
    text = format_word(w)
    assert parse_word(text) == w
    assert format_word(parse_word(text)) == text


@given(st.text(alphabet="XYe^-0123 ", max_size=12))
def test_parser_never_crashes_unexpectedly(text):
    try:
        w = parse_word(text)
    except (WordSyntaxError, ZeroExponent, NonInvertibleGenerator):
        return
    assert parse_word(format_word(w)) == w
