"""Exact coefficient domains.

Three kinds of domain are supported, all of them fields:

* ``Rationals()`` -- elements are ``gmpy2.mpq`` (through sympy's ``QQ``);
* ``PrimeField(p)`` -- elements are sympy ``GF(p)`` residues;
* ``RationalFunctions(names)`` -- elements are sympy ``FracElement`` over
  ``QQ``, kept in reduced form (numerator and denominator coprime, sign
  normalised) so that equal functions have equal representations.

Domain elements are used directly as scalars: they support ``+ - * /`` and
``**`` with integer exponents, and their truth value is "nonzero".  The
domain object supplies construction, parsing, canonical printing and the
checked operations (``inv``, ``equal``) that raise instead of silently
producing a wrong value.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Any, Iterable, Sequence

from sympy import GF, QQ, isprime
from sympy.polys.fields import FracField
from sympy.polys.orderings import lex

__all__ = [
    "CoeffError",
    "DomainMismatch",
    "DuplicateIndeterminate",
    "NonPrimeModulus",
    "NotInvertible",
    "ScalarSyntaxError",
    "Domain",
    "Rationals",
    "PrimeField",
    "RationalFunctions",
    "domain_create",
    "scalar_equal",
]


class CoeffError(Exception):
    pass


class NonPrimeModulus(CoeffError, ValueError):
    pass


class DuplicateIndeterminate(CoeffError, ValueError):
    pass


class DomainMismatch(CoeffError, TypeError):
    pass


class NotInvertible(CoeffError, ZeroDivisionError):
    pass


class ScalarSyntaxError(CoeffError, ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        if pos is not None:
            message = f"{message} at position {pos} in {text!r}"
        super().__init__(message)
        self.text = text
        self.pos = pos


class Domain:
    """Base class of the exact coefficient domains."""

    kind: str = ""
    characteristic: int = 0

    # -- construction ---------------------------------------------------
    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, num: int, den: int = 1):
        return self.from_int(num) * self.inv(self.from_int(den))

    def gen(self, name: str):
        raise CoeffError(f"domain {self} has no indeterminate {name!r}")

    def contains(self, x: Any) -> bool:
        raise NotImplementedError

    def convert(self, x):
        """Coerce an int or an element of this domain."""
        if isinstance(x, int):
            return self.from_int(x)
        if self.contains(x):
            return x
        raise DomainMismatch(f"{x!r} is not an element of {self}")

    # -- checked arithmetic ---------------------------------------------
    def is_zero(self, x) -> bool:
        return not x

    def inv(self, x):
        if not x:
            raise NotInvertible(f"{self.to_str(x)} is not invertible in {self}")
        return self.one / x

    def equal(self, a, b) -> bool:
        self._check(a)
        self._check(b)
        return a == b

    def _check(self, x) -> None:
        if not self.contains(x):
            raise DomainMismatch(f"{x!r} is not an element of {self}")

    # -- text -----------------------------------------------------------
    def to_str(self, x) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        return _ScalarParser(self, text).parse()

    def descriptor(self) -> dict:
        raise NotImplementedError

    # -- matrices -------------------------------------------------------
    def matmul_rows(self, a: list[list], b: list[list]) -> list[list] | None:
        """Optional fast path for matrix products; ``None`` means no fast path."""
        return None

    def __eq__(self, other):
        return isinstance(other, Domain) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(repr(self.descriptor()))


class Rationals(Domain):
    kind = "rationals"
    characteristic = 0

    def from_int(self, n: int):
        return QQ(n)

    def from_fraction(self, num: int, den: int = 1):
        if den == 0:
            raise NotInvertible("zero denominator")
        return QQ(num, den)

    def contains(self, x) -> bool:
        return QQ.of_type(x)

    def to_str(self, x) -> str:
        return str(x)

    def descriptor(self) -> dict:
        return {"kind": self.kind}

    def __repr__(self):
        return "Rationals()"


class PrimeField(Domain):
    kind = "prime-field"

    def __init__(self, p: int):
        if not isinstance(p, int) or not isprime(p):
            raise NonPrimeModulus(f"modulus {p!r} is not prime")
        self.p = p
        self.characteristic = p
        self._K = GF(p)

    def from_int(self, n: int):
        return self._K(n)

    def contains(self, x) -> bool:
        return self._K.of_type(x)

    def to_str(self, x) -> str:
        return str(int(x) % self.p)

    def descriptor(self) -> dict:
        return {"kind": self.kind, "p": self.p}

    def matmul_rows(self, a, b):
        import numpy as np

        n_inner = len(b)
        if not a or not n_inner or (self.p - 1) ** 2 * n_inner >= 2**62:
            return None
        A = np.array([[int(x) for x in row] for row in a], dtype=np.int64)
        B = np.array([[int(x) for x in row] for row in b], dtype=np.int64)
        C = (A @ B) % self.p
        K = self._K
        return [[K(int(x)) for x in row] for row in C]

    def __repr__(self):
        return f"PrimeField({self.p})"


@lru_cache(maxsize=None)
def _frac_field(names: tuple[str, ...]) -> FracField:
    return FracField(list(names), QQ, lex)


class RationalFunctions(Domain):
    """Field of rational functions over the rationals in named indeterminates.

    Monomials are ordered lexicographically with the indeterminates in the
    order given, which fixes the printed canonical form.
    """

    kind = "rational-functions"
    characteristic = 0

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if not names:
            raise CoeffError("need at least one indeterminate")
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise DuplicateIndeterminate(f"duplicate indeterminate(s): {', '.join(dup)}")
        for n in names:
            if not _NAME_RE.fullmatch(n):
                raise CoeffError(f"bad indeterminate name {n!r}")
        self.names = names
        self.field = _frac_field(names)
        self._gens = dict(zip(names, self.field.gens))

    def from_int(self, n: int):
        return self.field(n)

    def gen(self, name: str):
        try:
            return self._gens[name]
        except KeyError:
            raise CoeffError(f"domain {self} has no indeterminate {name!r}") from None

    def contains(self, x) -> bool:
        return getattr(x, "field", None) == self.field

    def equal(self, a, b) -> bool:
        self._check(a)
        self._check(b)
        return a.numer * b.denom - b.numer * a.denom == 0

    def numerator(self, x):
        return x.numer

    def denominator(self, x):
        return x.denom

    def to_str(self, x) -> str:
        num = self._poly_str(x.numer)
        if x.denom == 1:
            return num
        den_terms = list(x.denom.terms())
        den = self._poly_str(x.denom)
        if len(den_terms) > 1 or not _ATOM_RE.fullmatch(den):
            den = f"({den})"
        if len(list(x.numer.terms())) > 1:
            num = f"({num})"
        return f"{num}/{den}"

    def _poly_str(self, poly) -> str:
        terms = list(poly.terms())
        if not terms:
            return "0"
        out = []
        for idx, (monom, coeff) in enumerate(terms):
            neg = coeff < 0
            c = -coeff if neg else coeff
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, monom) if e]
            if not factors:
                body = str(c)
            elif c == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(c)] + factors)
            if idx == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def descriptor(self) -> dict:
        return {"kind": self.kind, "indeterminates": list(self.names)}

    def __repr__(self):
        return f"RationalFunctions({list(self.names)!r})"


def domain_create(spec: str | dict | Domain) -> Domain:
    """Build a domain from a descriptor.

    Accepted forms: a ``Domain`` (returned as is), the string ``"rationals"``,
    or a dict ``{"kind": ..., "p": ..., "indeterminates": [...]}``.
    """
    if isinstance(spec, Domain):
        return spec
    if isinstance(spec, str):
        spec = {"kind": spec}
    kind = spec.get("kind")
    if kind == "rationals":
        return Rationals()
    if kind == "prime-field":
        return PrimeField(spec["p"])
    if kind == "rational-functions":
        return RationalFunctions(spec["indeterminates"])
    raise CoeffError(f"unsupported domain kind {kind!r}")


def scalar_equal(domain: Domain, a, b) -> bool:
    return domain.equal(a, b)


# ---------------------------------------------------------------------------
# scalar literal parser
# ---------------------------------------------------------------------------

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_ATOM_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|\d+")
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text_end = len(text.rstrip())
    while pos < text_end:
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ScalarSyntaxError("unexpected character", text, pos)
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("num", num, start))
        elif name is not None:
            tokens.append(("name", name, start))
        else:
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", "", text_end))
    return tokens


class _ScalarParser:
    """Recursive-descent parser for scalar literals.

    expr   := ['-'|'+'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ['^' ['-'] digits]
    atom   := digits | name | '(' expr ')' | '-' factor
    """

    def __init__(self, domain: Domain, text: str):
        self.domain = domain
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, pos=None):
        raise ScalarSyntaxError(message, self.text, self.peek()[2] if pos is None else pos)

    def expect_op(self, op):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}")
        self.i += 1

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty scalar literal")
        value = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return value

    def expr(self):
        kind, val, _ = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.i += 1
            sign = -1 if val == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.i += 1
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.i += 1
                rhs = self.factor()
                value = value * rhs if val == "*" else value * self.domain.inv(rhs)
            else:
                return value

    def factor(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.i += 1
            neg = False
            if self.peek()[:2] == ("op", "-"):
                self.i += 1
                neg = True
            kind, val, _ = self.peek()
            if kind != "num":
                self.error("expected integer exponent")
            self.i += 1
            n = int(val)
            if neg:
                base = self.domain.inv(base)
            return base**n
        return base

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.i += 1
            return self.domain.from_int(int(val))
        if kind == "name":
            self.i += 1
            try:
                return self.domain.gen(val)
            except CoeffError:
                self.error(f"unknown indeterminate {val!r}", pos)
        if kind == "op" and val == "(":
            self.i += 1
            value = self.expr()
            self.expect_op(")")
            return value
        if kind == "op" and val == "-":
            self.i += 1
            return -self.factor()
        self.error("expected a number, name or '('")


def parse_many(domain: Domain, texts: Iterable[str]) -> list:
    return [domain.parse(t) for t in texts]
