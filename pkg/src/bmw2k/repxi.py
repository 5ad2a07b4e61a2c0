"""The rank-3k^2 module Xi = Xi_0 + Xi_1 + Xi_2.

Basis vectors are ``v[i][j]``, ``u[i][j]`` and ``w[i][j]`` for
``0 <= i, j < k``; they will be identified with the algebra elements
``Y^i e Y^j``, ``Y^i X Y^j`` and ``X Y^i X Y^j``.  Symbols with indices
outside the window are rewritten with the cyclotomic recurrence in each
index (:func:`index_normalize`).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import NamedTuple

from .linalg import Matrix, lincomb, unit_vector
from .params import ParamSet
from .repv import RelationReport, VRep, build_v, module_relations, v_extended

__all__ = [
    "BasisClass",
    "BasisIndex",
    "XiRep",
    "InconsistentInverse",
    "basis_labels",
    "index_normalize",
    "build_xi",
    "verify_xi",
    "three_by_three_check",
    "xi_matrices_dict",
]


class InconsistentInverse(RuntimeError):
    pass


class BasisClass(IntEnum):
    V = 0
    U = 1
    W = 2


class BasisIndex(NamedTuple):
    cls: BasisClass
    i: int
    j: int

    def flat(self, k: int) -> int:
        return int(self.cls) * k * k + self.i * k + self.j

    @classmethod
    def from_flat(cls, k: int, t: int) -> BasisIndex:
        c, rest = divmod(t, k * k)
        i, j = divmod(rest, k)
        return cls(BasisClass(c), i, j)

    def label(self) -> str:
        return f"{self.cls.name.lower()}[{self.i}][{self.j}]"


def basis_labels(k: int) -> list[str]:
    return [BasisIndex.from_flat(k, t).label() for t in range(3 * k * k)]


@dataclass(frozen=True)
class XiRep:
    params: ParamSet
    vrep: VRep
    Y: Matrix
    Yinv: Matrix
    X: Matrix
    W: Matrix
    E: Matrix

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def dim(self) -> int:
        return 3 * self.params.k ** 2

    @property
    def domain(self):
        return self.params.domain

    def flat(self, cls, i: int, j: int) -> int:
        return BasisIndex(BasisClass(cls), i, j).flat(self.k)

    def unit(self, cls, i: int, j: int) -> list:
        return unit_vector(self.domain, self.dim, self.flat(cls, i, j))


class _Normalizer:
    """Caches ``v_s`` coordinates so out-of-window symbols are cheap to rewrite."""

    def __init__(self, vrep: VRep):
        self.vrep = vrep
        self.k = vrep.k
        self._cache: dict[int, list] = {}

    def coords(self, s: int) -> list:
        vec = self._cache.get(s)
        if vec is None:
            vec = self._cache[s] = v_extended(self.vrep, s)
        return vec

    def __call__(self, cls, i: int, j: int) -> list:
        k = self.k
        dom = self.vrep.domain
        out = [dom.zero] * (3 * k * k)
        base = int(cls) * k * k
        ci, cj = self.coords(i), self.coords(j)
        for a, x in enumerate(ci):
            if not x:
                continue
            for b, y in enumerate(cj):
                if y:
                    out[base + a * k + b] = x * y
        return out


def index_normalize(vrep: VRep, cls, i: int, j: int) -> list:
    """Coordinates of ``x_{ij}`` (``x`` in v/u/w) for arbitrary integers ``i, j``."""
    return _Normalizer(vrep)(BasisClass(cls), i, j)


def build_xi(ps: ParamSet, vrep: VRep | None = None) -> XiRep:
    vrep = build_v(ps) if vrep is None else vrep
    dom, k = ps.domain, ps.k
    kk = k * k
    n = 3 * kk
    delta, lam = ps.delta, ps.lam
    norm = _Normalizer(vrep)
    V, U, W_ = BasisClass.V, BasisClass.U, BasisClass.W

    def idx(cls, i, j):
        return int(cls) * kk + i * k + j

    Y = Matrix.zeros(dom, n)
    X = Matrix.zeros(dom, n)
    E = Matrix.zeros(dom, n)

    # (1) Xi_0 = V (x) V with the left action on the first factor
    for M, Mv in ((Y, vrep.Y), (X, vrep.X), (E, vrep.E)):
        for i in range(k):
            for j in range(k):
                col = idx(V, i, j)
                for a in range(k):
                    if Mv[a, i]:
                        M[idx(V, a, j), col] = Mv[a, i]

    # (2) E u_ij = v_00 Y^i X Y^j = v_0 (x) (Y^j X Y^i v_0), and E w_ij = lambda E u_ij
    eu: dict[tuple[int, int], list] = {}
    yv = [unit_vector(dom, k, i) for i in range(k)]  # Y^i v_0 = v_i
    for i in range(k):
        xyi = vrep.X.apply(yv[i])
        for j in range(k):
            c = xyi
            for _ in range(j):
                c = vrep.Y.apply(c)
            vec = [dom.zero] * n
            for b, x in enumerate(c):
                if x:
                    vec[idx(V, 0, b)] = x
            eu[i, j] = vec
            E.set_column(idx(U, i, j), vec)
            E.set_column(idx(W_, i, j), [lam * x if x else x for x in vec])

    # (3) X u_ij = w_ij, X w_ij = u_ij + delta w_ij - delta lambda E u_ij
    for i in range(k):
        for j in range(k):
            X[idx(W_, i, j), idx(U, i, j)] = dom.one
            col = [-delta * lam * x if x else x for x in eu[i, j]]
            col[idx(U, i, j)] = col[idx(U, i, j)] + 1
            col[idx(W_, i, j)] = col[idx(W_, i, j)] + delta
            X.set_column(idx(W_, i, j), col)

    # (4) Y u_ij = u_{i+1,j}
    for i in range(k):
        for j in range(k):
            Y.set_column(idx(U, i, j), norm(U, i + 1, j))

    # (5) Y w_ij = W u_{i,j+1} + delta u_{1,i+j} - delta (YX) v_ij
    for i in range(k):
        for j in range(k):
            u = norm(U, i, j + 1)
            Wu = lincomb(dom, [(dom.one, X.apply(u)), (-delta, u), (delta, E.apply(u))], n)
            yxv = Y.apply(X.apply(unit_vector(dom, n, idx(V, i, j))))
            col = lincomb(dom, [(dom.one, Wu), (delta, norm(U, 1, i + j)), (-delta, yxv)], n)
            Y.set_column(idx(W_, i, j), col)

    # (6) Y^-1 = -q_0^-1 sum_{i<k} q_{i+1} Y^i
    I = Matrix.identity(dom, n)
    Yinv = Matrix.zeros(dom, n)
    power = I
    for i in range(k):
        Yinv = Yinv + power.scale(ps.q_ext(i + 1))
        if i < k - 1:
            power = power @ Y
    Yinv = Yinv.scale(-ps.q0_inv)
    if not (Y @ Yinv).is_identity():
        raise InconsistentInverse("polynomial expression for Y^-1 is not an inverse of Y")

    # (7) X^-1 = X - delta + delta E
    Wm = X - I.scale(delta) + E.scale(delta)
    return XiRep(ps, vrep, Y, Yinv, X, Wm, E)


def verify_xi(rep: XiRep) -> RelationReport:
    kk = rep.k ** 2
    results = module_relations(rep.params, rep.Y, rep.Yinv, rep.X, rep.E, rep.W, n_columns=range(kk))
    return RelationReport("Xi", tuple(results))


def three_by_three_check(ps: ParamSet) -> bool:
    """Check the action of X and E on ``span(u_ij, w_ij, E u_ij)``."""
    dom = ps.domain
    d, lam = ps.delta, ps.lam
    z, one = dom.zero, dom.one
    Xp = Matrix(dom, [[z, one, z], [one, d, z], [z, -d * lam, lam]])
    Ep = Matrix(dom, [[z, z, z], [z, z, z], [one, lam, ps.A[0]]])
    I3 = Matrix.identity(dom, 3)
    Wp = Xp - I3.scale(d) + Ep.scale(d)
    lamE = Ep.scale(lam)
    return (Xp @ Wp).is_identity() and (Wp @ Xp).is_identity() and Xp @ Ep == lamE and Ep @ Xp == lamE


def xi_matrices_dict(rep: XiRep) -> dict:
    return {
        "k": rep.k,
        "basis": basis_labels(rep.k),
        "Y": rep.Y.to_strings(),
        "Yinv": rep.Yinv.to_strings(),
        "X": rep.X.to_strings(),
        "Xinv": rep.W.to_strings(),
        "E": rep.E.to_strings(),
    }
