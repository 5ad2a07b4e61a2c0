"""Words in the generators X, Y, e with integer exponents.

Grammar (whitespace between terms is optional)::

    word := term*
    term := gen exp?
    gen  := 'X' | 'Y' | 'e'
    exp  := '^' '-'? digits
"""

from __future__ import annotations

import re
from typing import NamedTuple

__all__ = [
    "WordError",
    "WordSyntaxError",
    "NonInvertibleGenerator",
    "ZeroExponent",
    "Token",
    "Word",
    "parse_word",
    "format_word",
    "expand_word",
    "make_word",
    "reverse_word",
]

GENERATORS = ("X", "Y", "e")


class WordError(ValueError):
    pass


class WordSyntaxError(WordError, SyntaxError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


class NonInvertibleGenerator(WordError):
    pass


class ZeroExponent(WordError):
    pass


class Token(NamedTuple):
    gen: str
    exp: int = 1


Word = tuple  # tuple[Token, ...]

_TERM_RE = re.compile(r"([XYe])(?:\^(-?\d+))?")
_EXP_RE = re.compile(r"\^(-?\d*)")


def _token(gen: str, exp: int) -> Token:
    if gen not in GENERATORS:
        raise WordError(f"unknown generator {gen!r}")
    if exp == 0:
        raise ZeroExponent(f"zero exponent on {gen}")
    if gen == "e" and exp < 0:
        raise NonInvertibleGenerator(f"e is not invertible (got e^{exp})")
    return Token(gen, exp)


def make_word(tokens) -> Word:
    """Validate ``(gen, exp)`` pairs into a Word."""
    return tuple(_token(g, int(n)) for g, n in tokens)


def parse_word(text: str) -> Word:
    tokens = []
    pos, end = 0, len(text)
    while pos < end:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TERM_RE.match(text, pos)
        if not m:
            raise WordSyntaxError("expected generator X, Y or e", text, pos)
        gen, exp = m.group(1), m.group(2)
        if exp is None and _EXP_RE.match(text, m.end()):
            raise WordSyntaxError("malformed exponent", text, m.end())
        n = 1 if exp is None else int(exp)
        if n == 0:
            raise ZeroExponent(f"zero exponent at position {m.start(2)} in {text!r}")
        if gen == "e" and n < 0:
            raise NonInvertibleGenerator(f"e^{n} at position {pos}: e is not invertible")
        tokens.append(Token(gen, n))
        pos = m.end()
    return tuple(tokens)


def format_word(word) -> str:
    return " ".join(g if n == 1 else f"{g}^{n}" for g, n in word)


def expand_word(word) -> Word:
    """Split every token into exponent +-1 tokens."""
    out = []
    for gen, exp in word:
        step = 1 if exp > 0 else -1
        out.extend([Token(gen, step)] * abs(exp))
    return tuple(out)


def reverse_word(word) -> Word:
    """The image of a word under the anti-involution fixing X, Y and e."""
    return tuple(Token(*t) for t in reversed(word))
