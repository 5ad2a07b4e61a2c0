"""The two-strand algebra realised through its regular representation.

The module Xi is identified with the algebra itself by

    v[i][j] -> Y^i e Y^j,   u[i][j] -> Y^i X Y^j,   w[i][j] -> X Y^i X Y^j,

so an algebra element is a coordinate vector of length ``3k^2``.  The
identity is ``kappa = X^-1 u[0][0]`` and a word reduces to its basis
expansion by acting with the generator matrices on ``kappa``.  Products use
the left-multiplication matrix of each basis element (cached per algebra).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterator

from .linalg import Matrix, lincomb, unit_vector, vec_equal
from .params import ParamSet
from .repxi import BasisClass, BasisIndex, XiRep, basis_labels, build_xi
from .words import NonInvertibleGenerator, Token, parse_word, reverse_word

__all__ = [
    "RepMismatch",
    "Algebra",
    "AlgebraElement",
    "IdealReport",
    "HeckeReport",
    "basis_word",
    "one_element",
    "reduce_word",
    "multiply",
    "involution",
    "structure_constants",
    "structure_constant_records",
    "verify_phi",
    "phi_mismatches",
    "hecke_quotient_matrices",
    "ideal_check",
    "hecke_quotient_check",
]


class RepMismatch(ValueError):
    pass


def basis_word(k: int, t: int) -> tuple:
    """Spelling of basis element ``t``: ``Y^i e Y^j``, ``Y^i X Y^j`` or ``X Y^i X Y^j``."""
    cls, i, j = BasisIndex.from_flat(k, t)
    middle = Token("e") if cls == BasisClass.V else Token("X")
    tokens = [Token("Y", i), middle, Token("Y", j)]
    if cls == BasisClass.W:
        tokens.insert(0, Token("X"))
    return tuple(tok for tok in tokens if tok.exp)


class Algebra:
    """B_2^k over a fixed parameter set, with lazily built multiplication data."""

    def __init__(self, rep: XiRep):
        self.rep = rep
        self.k = rep.k
        self.dim = rep.dim
        self.domain = rep.domain
        self.labels = basis_labels(self.k)
        self._lock = threading.Lock()
        self._left: dict[int, Matrix] = {}
        self._ypow: list[Matrix] | None = None
        self._star: Matrix | None = None
        self._gens = {
            ("X", 1): rep.X,
            ("X", -1): rep.W,
            ("Y", 1): rep.Y,
            ("Y", -1): rep.Yinv,
            ("e", 1): rep.E,
        }
        n = self.dim
        self.one_vector = rep.W.apply(unit_vector(self.domain, n, rep.flat(BasisClass.U, 0, 0)))

    @classmethod
    def from_params(cls, ps: ParamSet) -> Algebra:
        return cls(build_xi(ps))

    @property
    def params(self) -> ParamSet:
        return self.rep.params

    # -- elements -------------------------------------------------------
    def element(self, coeffs) -> AlgebraElement:
        coeffs = tuple(self.domain.convert(c) for c in coeffs)
        if len(coeffs) != self.dim:
            raise ValueError(f"expected {self.dim} coefficients, got {len(coeffs)}")
        return AlgebraElement(self, coeffs)

    def basis(self, t: int) -> AlgebraElement:
        return AlgebraElement(self, tuple(unit_vector(self.domain, self.dim, t)))

    def basis_by_label(self, label: str) -> AlgebraElement:
        return self.basis(self.labels.index(label))

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, (self.domain.zero,) * self.dim)

    def scalar(self, c) -> AlgebraElement:
        c = self.domain.convert(c)
        return AlgebraElement(self, tuple(c * x if x else x for x in self.one_vector))

    # -- actions --------------------------------------------------------
    def generator_matrix(self, gen: str, sign: int = 1) -> Matrix:
        try:
            return self._gens[gen, 1 if sign > 0 else -1]
        except KeyError:
            raise NonInvertibleGenerator(f"{gen}^-1 is not an element of the algebra") from None

    def act(self, word, vec) -> list:
        """Left action of a word on a coordinate vector."""
        if isinstance(word, str):
            word = parse_word(word)
        for gen, exp in reversed(tuple(word)):
            M = self.generator_matrix(gen, exp)
            for _ in range(abs(exp)):
                vec = M.apply(vec)
        return vec

    def word_matrix(self, word) -> Matrix:
        if isinstance(word, str):
            word = parse_word(word)
        out = Matrix.identity(self.domain, self.dim)
        for gen, exp in word:
            M = self.generator_matrix(gen, exp)
            for _ in range(abs(exp)):
                out = out @ M
        return out

    def _y_powers(self) -> list[Matrix]:
        if self._ypow is None:
            pows = [Matrix.identity(self.domain, self.dim)]
            for _ in range(1, self.k):
                pows.append(pows[-1] @ self.rep.Y)
            with self._lock:
                if self._ypow is None:
                    self._ypow = pows
        return self._ypow

    def left_matrix(self, t: int) -> Matrix:
        """Matrix of left multiplication by basis element ``t``."""
        M = self._left.get(t)
        if M is not None:
            return M
        cls, i, j = BasisIndex.from_flat(self.k, t)
        ypow = self._y_powers()
        middle = self.rep.E if cls == BasisClass.V else self.rep.X
        M = ypow[i] @ middle @ ypow[j]
        if cls == BasisClass.W:
            M = self.rep.X @ M
        with self._lock:
            return self._left.setdefault(t, M)

    def star_matrix(self) -> Matrix:
        if self._star is None:
            cols = [self.act(reverse_word(basis_word(self.k, t)), self.one_vector) for t in range(self.dim)]
            S = Matrix.from_columns(self.domain, cols)
            with self._lock:
                if self._star is None:
                    self._star = S
        return self._star


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: Algebra
    coeffs: tuple

    def _coerce(self, other) -> AlgebraElement:
        if isinstance(other, AlgebraElement):
            if other.algebra is not self.algebra:
                raise RepMismatch("elements belong to different algebras")
            return other
        return self.algebra.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        c = self.algebra.domain.convert(other)
        return AlgebraElement(self.algebra, tuple(c * a if a else a for a in self.coeffs))

    def __rmul__(self, other):
        c = self.algebra.domain.convert(other)
        return AlgebraElement(self.algebra, tuple(c * a if a else a for a in self.coeffs))

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra is other.algebra and self.coeffs == other.coeffs
        return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def star(self) -> AlgebraElement:
        return involution(self)

    def support(self) -> dict[str, object]:
        labels = self.algebra.labels
        return {labels[t]: c for t, c in enumerate(self.coeffs) if c}

    def to_dict(self) -> dict[str, str]:
        s = self.algebra.domain.to_str
        return {label: s(c) for label, c in self.support().items()}

    def __repr__(self):
        return f"AlgebraElement({self.to_dict()!r})"


def _algebra(x) -> Algebra:
    if isinstance(x, Algebra):
        return x
    if isinstance(x, XiRep):
        return Algebra(x)
    raise TypeError(f"expected an Algebra or XiRep, got {type(x).__name__}")


def one_element(alg) -> AlgebraElement:
    alg = _algebra(alg)
    return AlgebraElement(alg, tuple(alg.one_vector))


def reduce_word(alg, word) -> AlgebraElement:
    """Basis expansion of a word (text or token sequence)."""
    alg = _algebra(alg)
    return AlgebraElement(alg, tuple(alg.act(word, alg.one_vector)))


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    if a.algebra is not b.algebra:
        raise RepMismatch("elements belong to different algebras")
    alg = a.algebra
    terms = [(c, alg.left_matrix(s).apply(b.coeffs)) for s, c in enumerate(a.coeffs) if c]
    return AlgebraElement(alg, tuple(lincomb(alg.domain, terms, alg.dim)))


def involution(a: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(a.algebra, tuple(a.algebra.star_matrix().apply(a.coeffs)))


def structure_constants(alg) -> dict[tuple[int, int], dict[int, object]]:
    """Sparse table ``c[s, t] = {r: coefficient}`` of ``b_s b_t = sum_r c b_r``."""
    alg = _algebra(alg)
    table = {}
    for s in range(alg.dim):
        L = alg.left_matrix(s)
        for t in range(alg.dim):
            table[s, t] = {r: x for r, x in enumerate(L.column(t)) if x}
    return table


def structure_constant_records(alg) -> Iterator[dict[str, str]]:
    """One record per nonzero structure constant, in (s, t, r) order."""
    alg = _algebra(alg)
    labels, to_str = alg.labels, alg.domain.to_str
    for s in range(alg.dim):
        L = alg.left_matrix(s)
        for t in range(alg.dim):
            for r, x in enumerate(L.column(t)):
                if x:
                    yield {"s": labels[s], "t": labels[t], "r": labels[r], "coeff": to_str(x)}


def phi_mismatches(alg) -> list[str]:
    """Basis words whose reduction is not the matching unit vector."""
    alg = _algebra(alg)
    bad = []
    for t in range(alg.dim):
        vec = alg.act(basis_word(alg.k, t), alg.one_vector)
        if not vec_equal(alg.domain, vec, unit_vector(alg.domain, alg.dim, t)):
            bad.append(alg.labels[t])
    return bad


def verify_phi(alg) -> bool:
    return not phi_mismatches(alg)


# ---------------------------------------------------------------------------
# the ideal generated by e and the Hecke quotient
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdealReport:
    left_closed: bool
    right_closed: bool
    copies_of_v: bool
    generated_by_e: bool
    star_invariant: bool

    @property
    def passed(self) -> bool:
        return all((self.left_closed, self.right_closed, self.copies_of_v, self.generated_by_e, self.star_invariant))

    def to_dict(self) -> dict:
        return {
            "report": "ideal",
            "passed": self.passed,
            "left_closed": self.left_closed,
            "right_closed": self.right_closed,
            "copies_of_v": self.copies_of_v,
            "generated_by_e": self.generated_by_e,
            "star_invariant": self.star_invariant,
        }


_GENERATOR_WORDS = ("X", "X^-1", "Y", "Y^-1", "e")
_GENERATOR_WORDS_PAIRS = (("X", 1), ("X", -1), ("Y", 1), ("Y", -1), ("e", 1))


def _in_v_class(alg: Algebra, vec) -> bool:
    kk = alg.k ** 2
    return not any(vec[kk:])


def ideal_check(alg) -> IdealReport:
    alg = _algebra(alg)
    k, kk, rep = alg.k, alg.k ** 2, alg.rep
    v_cols = range(kk)

    left_closed = all(
        _in_v_class(alg, alg.generator_matrix(g, s).column(c))
        for g, s in _GENERATOR_WORDS_PAIRS
        for c in v_cols
    )

    gens = [reduce_word(alg, w) for w in _GENERATOR_WORDS]
    right_closed = all(
        _in_v_class(alg, multiply(alg.basis(c), g).coeffs) for c in v_cols for g in gens
    )

    # span{v[i][j] : i} is a copy of V for each j
    vr = rep.vrep
    pairs = ((rep.Y, vr.Y), (rep.Yinv, vr.Yinv), (rep.X, vr.X), (rep.W, vr.W), (rep.E, vr.E))
    copies = True
    for j in range(k):
        idx = [rep.flat(BasisClass.V, i, j) for i in range(k)]
        others = [r for r in range(alg.dim) if r not in idx]
        for big, small in pairs:
            if big.submatrix(idx, idx) != small or not big.submatrix(others, idx).is_zero():
                copies = False

    e = reduce_word(alg, "e")
    generated = True
    for i in range(k):
        left = multiply(reduce_word(alg, [Token("Y", i)] if i else []), e)
        for j in range(k):
            prod = multiply(left, reduce_word(alg, [Token("Y", j)] if j else []))
            if prod != alg.basis(rep.flat(BasisClass.V, i, j)):
                generated = False

    S = alg.star_matrix()
    star_invariant = all(_in_v_class(alg, S.column(c)) for c in v_cols)
    return IdealReport(left_closed, right_closed, copies, generated, star_invariant)


@dataclass(frozen=True)
class HeckeReport:
    dimension: int
    expected_dimension: int
    ideal_invariant: bool
    braid: bool
    kth_order: bool
    quadratic: bool
    invertible: bool

    @property
    def passed(self) -> bool:
        return (
            self.dimension == self.expected_dimension
            and self.ideal_invariant
            and self.braid
            and self.kth_order
            and self.quadratic
            and self.invertible
        )

    def to_dict(self) -> dict:
        return {
            "report": "hecke-quotient",
            "passed": self.passed,
            "dimension": self.dimension,
            "expected_dimension": self.expected_dimension,
            "ideal_invariant": self.ideal_invariant,
            "T0 T1 T0 T1 = T1 T0 T1 T0": self.braid,
            "sum q_i T0^i = 0": self.kth_order,
            "T1^2 = delta T1 + 1": self.quadratic,
            "T0, T1 invertible": self.invertible,
        }


def hecke_quotient_matrices(alg) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    """Induced matrices of ``Y, Y^-1, X, X^-1`` modulo the ideal generated by e."""
    alg = _algebra(alg)
    kk = alg.k ** 2
    keep = range(kk, alg.dim)
    rep = alg.rep
    return tuple(M.submatrix(keep, keep) for M in (rep.Y, rep.Yinv, rep.X, rep.W))


def hecke_quotient_check(alg) -> HeckeReport:
    alg = _algebra(alg)
    ps, dom = alg.params, alg.domain
    kk = alg.k ** 2
    rep = alg.rep
    ideal_invariant = all(
        _in_v_class(alg, M.column(c)) for M in (rep.Y, rep.Yinv, rep.X, rep.W, rep.E) for c in range(kk)
    )
    T0, T0inv, T1, T1inv = hecke_quotient_matrices(alg)
    n = T0.nrows
    I = Matrix.identity(dom, n)
    braid = T0 @ T1 @ T0 @ T1 == T1 @ T0 @ T1 @ T0
    kth = Matrix.zeros(dom, n)
    power = I
    for l in range(ps.k + 1):
        kth = kth + power.scale(ps.q_ext(l))
        power = power @ T0
    quadratic = (T1 @ T1 - T1.scale(ps.delta) - I).is_zero()
    invertible = (T0 @ T0inv).is_identity() and (T1 @ T1inv).is_identity()
    return HeckeReport(n, 2 * kk, ideal_invariant, braid, kth.is_zero(), quadratic, invertible)
