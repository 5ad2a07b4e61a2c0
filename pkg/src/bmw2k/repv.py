"""The rank-k module V with basis v_0 .. v_{k-1}.

``Y`` shifts ``v_i -> v_{i+1}`` and wraps ``v_{k-1}`` by the cyclotomic
relation; ``X`` is defined on ``v_0`` and ``v_1`` directly and on higher
basis vectors by recursion; ``E`` maps every vector into ``span(v_0)``.
Parameters need not be admissible; :func:`verify_v` reports which module
relations fail.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix, lincomb, unit_vector, vec_equal
from .params import ParamSet

__all__ = [
    "VRep",
    "RelationResult",
    "RelationReport",
    "build_v",
    "v_extended",
    "w_closed_form",
    "verify_v",
    "n_operator",
    "module_relations",
    "w_formula_holds",
]


@dataclass(frozen=True)
class VRep:
    params: ParamSet
    Y: Matrix
    Yinv: Matrix
    X: Matrix
    E: Matrix
    W: Matrix

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def domain(self):
        return self.params.domain


@dataclass(frozen=True)
class RelationResult:
    name: str
    residual: Matrix

    @property
    def ok(self) -> bool:
        return self.residual.is_zero()

    def to_dict(self, with_residual: bool = False) -> dict:
        out = {"relation": self.name, "residual_is_zero": self.ok}
        if with_residual:
            out["residual"] = self.residual.to_strings()
        return out


@dataclass(frozen=True)
class RelationReport:
    title: str
    results: tuple

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list[str]:
        return [r.name for r in self.results if not r.ok]

    def __getitem__(self, name: str) -> RelationResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self, with_residuals: bool = False) -> dict:
        return {
            "report": self.title,
            "passed": self.passed,
            "relations": [r.to_dict(with_residuals and not r.ok) for r in self.results],
        }


def build_v(ps: ParamSet) -> VRep:
    k, dom = ps.k, ps.domain
    delta, lam = ps.delta, ps.lam
    qe = ps.q_ext

    Y = Matrix.zeros(dom, k)
    for i in range(k - 1):
        Y[i + 1, i] = dom.one
    for i in range(k):
        Y[i, k - 1] = Y[i, k - 1] + qe(i)

    Yinv = Matrix.zeros(dom, k)
    for i in range(1, k):
        Yinv[i - 1, i] = dom.one
    neg_q0_inv = -ps.q0_inv
    for i in range(k):
        Yinv[i, 0] = neg_q0_inv * qe(i + 1)

    E = Matrix.zeros(dom, k)
    for i in range(k):
        E[0, i] = ps.A[i]

    yinv_v0 = Yinv.column(0)
    cols = [unit_vector(dom, k, 0)]
    cols[0][0] = lam
    if k > 1:
        cols.append([ps.lam_inv * x for x in yinv_v0])
    for i in range(2, k):
        prev = Yinv.apply(cols[i - 1])
        cols.append(
            lincomb(
                dom,
                [(dom.one, prev), (-delta, unit_vector(dom, k, i - 2)), (delta * ps.A[i - 1], yinv_v0)],
                k,
            )
        )
    X = Matrix.from_columns(dom, cols)
    W = X - Matrix.identity(dom, k).scale(delta) + E.scale(delta)
    return VRep(ps, Y, Yinv, X, E, W)


def v_extended(rep: VRep, s: int) -> list:
    """Coordinates of ``v_s = Y^s v_0`` for any integer ``s``."""
    dom, k = rep.domain, rep.k
    if 0 <= s < k:
        return unit_vector(dom, k, s)
    if s >= k:
        vec = unit_vector(dom, k, k - 1)
        step, count = rep.Y, s - (k - 1)
    else:
        vec = unit_vector(dom, k, 0)
        step, count = rep.Yinv, -s
    for _ in range(count):
        vec = step.apply(vec)
    return vec


def w_closed_form(rep: VRep, l: int) -> list:
    """``W v_l = lambda^-1 v_{-l} + delta * sum_{i=1}^{l} (A_{l+1-i} v_{1-i} - v_{l-2i+2})``."""
    ps, dom, k = rep.params, rep.domain, rep.k
    if not 0 <= l <= k - 1:
        raise IndexError(f"l={l} outside 0..{k - 1}")
    terms = [(ps.lam_inv, v_extended(rep, -l))]
    for i in range(1, l + 1):
        terms.append((ps.delta * ps.A[l + 1 - i], v_extended(rep, 1 - i)))
        terms.append((-ps.delta, v_extended(rep, l - 2 * i + 2)))
    return lincomb(dom, terms, k)


def n_operator(Y: Matrix, X: Matrix) -> Matrix:
    """``N = YXYX - 1``."""
    return Y @ X @ Y @ X - Matrix.identity(Y.domain, Y.nrows)


def module_relations(ps: ParamSet, Y: Matrix, Yinv: Matrix, X: Matrix, E: Matrix, W: Matrix,
                     n_columns=None) -> list[RelationResult]:
    """Residuals of the defining relations for generator matrices of any size.

    ``N = YXYX - 1`` is checked on the columns listed in ``n_columns``
    (all columns when ``None``).  It vanishes on V but not on the regular
    representation, where only the copies of V are annihilated.
    """
    dom = ps.domain
    n = Y.nrows
    I = Matrix.identity(dom, n)
    out = []

    kth = Matrix.zeros(dom, n)
    power = I
    for l in range(ps.k + 1):
        kth = kth + power.scale(ps.q_ext(l))
        if l < ps.k:
            power = power @ Y
    out.append(RelationResult("sum q_l Y^l = 0", kth))
    out.append(RelationResult("Y Y^-1 = 1", Y @ Yinv - I))
    out.append(RelationResult("X W = 1", X @ W - I))
    out.append(RelationResult("W X = 1", W @ X - I))
    lamE = E.scale(ps.lam)
    out.append(RelationResult("X E = lambda E", X @ E - lamE))
    out.append(RelationResult("E X = lambda E", E @ X - lamE))
    YX = Y @ X
    XY = X @ Y
    YXYX = YX @ YX
    out.append(RelationResult("Y X Y X = X Y X Y", YXYX - XY @ XY))
    power = I
    for m in range(ps.k):
        out.append(RelationResult(f"E Y^{m} E = A_{m} E", E @ power @ E - E.scale(ps.A[m])))
        power = power @ Y
    YXY = YX @ Y
    lam_inv_E = E.scale(ps.lam_inv)
    out.append(RelationResult("E Y X Y = lambda^-1 E", E @ YXY - lam_inv_E))
    out.append(RelationResult("Y X Y E = lambda^-1 E", YXY @ E - lam_inv_E))
    N = YXYX - I
    name = "N = Y X Y X - 1 = 0"
    if n_columns is not None:
        N = N.submatrix(range(n), n_columns)
        name += " on v-class"
    out.append(RelationResult(name, N))
    return out


def verify_v(rep: VRep) -> RelationReport:
    results = module_relations(rep.params, rep.Y, rep.Yinv, rep.X, rep.E, rep.W)
    return RelationReport("V", tuple(results))


def w_formula_holds(rep: VRep) -> bool:
    return all(vec_equal(rep.domain, w_closed_form(rep, l), rep.W.column(l)) for l in range(rep.k))
