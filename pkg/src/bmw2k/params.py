"""Parameter sets, admissibility conditions and admissible constructions.

A parameter set for the two-strand algebra with cyclotomic order ``k``
consists of units ``q``, ``lambda``, ``q_0`` and further elements
``q_1 .. q_{k-1}``, ``A_0 .. A_{k-1}`` of a coefficient domain.  We always
use the convention ``q_k = -1`` so that ``sum_{l=0}^{k} q_l Y^l = 0``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Sequence

from .coeff import Domain, PrimeField, RationalFunctions, domain_create

__all__ = [
    "ParamError",
    "InvalidParameters",
    "ExhaustedResampling",
    "ParamSet",
    "AdmissibilityReport",
    "admissibility_report",
    "closed_form_beta",
    "closed_form_h",
    "symbolic_derive_h",
    "symbolic_params",
    "generic_admissible",
    "random_admissible_finite_field",
    "normalize_sign",
    "load_params",
    "params_from_dict",
]

RESAMPLE_BUDGET = 1000


class ParamError(Exception):
    pass


class InvalidParameters(ParamError, ValueError):
    pass


class ExhaustedResampling(ParamError, RuntimeError):
    pass


@dataclass(frozen=True)
class ParamSet:
    k: int
    domain: Domain
    q: object
    lam: object
    qs: tuple  # q_0 .. q_{k-1}
    A: tuple  # A_0 .. A_{k-1}
    delta: object = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        k = self.k
        if not isinstance(k, int) or k < 1:
            raise InvalidParameters(f"k must be a positive integer, got {k!r}")
        if len(self.qs) != k or len(self.A) != k:
            raise InvalidParameters(f"need exactly {k} values for q_i and for A_i")
        dom = self.domain
        conv = dom.convert
        object.__setattr__(self, "q", conv(self.q))
        object.__setattr__(self, "lam", conv(self.lam))
        object.__setattr__(self, "qs", tuple(conv(x) for x in self.qs))
        object.__setattr__(self, "A", tuple(conv(x) for x in self.A))
        for name, x in (("q", self.q), ("lambda", self.lam), ("q0", self.qs[0])):
            if not x:
                raise InvalidParameters(f"{name} must be a unit, got 0")
        delta = self.q - dom.inv(self.q)
        if not delta:
            raise InvalidParameters("delta = q - q^-1 is zero")
        object.__setattr__(self, "delta", delta)

    @property
    def epsilon(self) -> int:
        return self.k % 2

    @property
    def z(self) -> int:
        return (self.k + 1) // 2

    @property
    def lam_inv(self):
        return self.domain.inv(self.lam)

    @property
    def q_inv(self):
        return self.domain.inv(self.q)

    @property
    def q0_inv(self):
        return self.domain.inv(self.qs[0])

    def q_ext(self, i: int):
        """``q_i`` for ``0 <= i <= k`` with ``q_k = -1``."""
        if 0 <= i < self.k:
            return self.qs[i]
        if i == self.k:
            return -self.domain.one
        raise IndexError(f"q_{i} is undefined for k={self.k}")

    def replace(self, **changes) -> ParamSet:
        values = dict(k=self.k, domain=self.domain, q=self.q, lam=self.lam, qs=self.qs, A=self.A)
        values.update(changes)
        return ParamSet(**values)

    def to_dict(self) -> dict:
        s = self.domain.to_str
        return {
            "k": self.k,
            "domain": self.domain.descriptor(),
            "q": s(self.q),
            "lambda": s(self.lam),
            "q_i": [s(x) for x in self.qs],
            "A_i": [s(x) for x in self.A],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def params_from_dict(data: dict) -> ParamSet:
    """Build a ParamSet from the parameter-file schema."""
    try:
        k = data["k"]
        domain = domain_create(data["domain"])
        parse = domain.parse
        return ParamSet(
            k=k,
            domain=domain,
            q=parse(str(data["q"])),
            lam=parse(str(data["lambda"])),
            qs=tuple(parse(str(x)) for x in data["q_i"]),
            A=tuple(parse(str(x)) for x in data["A_i"]),
        )
    except KeyError as exc:
        raise InvalidParameters(f"missing field {exc.args[0]!r}") from None


def load_params(path) -> ParamSet:
    with open(path, encoding="utf-8") as fh:
        return params_from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# admissibility
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdmissibilityReport:
    domain: Domain
    residual_a: object
    beta: object
    h: tuple
    admissible: bool

    def to_dict(self) -> dict:
        s = self.domain.to_str
        return {
            "residual_a": s(self.residual_a),
            "beta": s(self.beta),
            "h": [s(x) for x in self.h],
            "admissible": self.admissible,
        }


def closed_form_beta(ps: ParamSet):
    q0 = ps.qs[0]
    return q0 * ps.lam - ps.q0_inv * ps.lam_inv + (1 - ps.epsilon) * ps.delta


def closed_form_h(ps: ParamSet, l: int, A: Sequence | None = None):
    """Closed form of ``h_l`` for ``1 <= l <= k-1``; ``A`` overrides ``ps.A``."""
    k, z = ps.k, ps.z
    if not 1 <= l <= k - 1:
        raise IndexError(f"h_{l} is undefined for k={k}")
    A = ps.A if A is None else A
    qe = ps.q_ext
    bracket = ps.domain.zero
    for r in range(1, k - l + 1):
        bracket += qe(r + l) * A[r]
    for i in range(max(l + 1, z), (l + k) // 2 + 1):
        bracket -= qe(2 * i - l)
    for i in range((l + 1) // 2, min(l, z - 1) + 1):
        bracket += qe(2 * i - l)
    return ps.lam_inv * (qe(l) + ps.q0_inv * qe(k - l)) + ps.delta * bracket


def admissibility_report(ps: ParamSet) -> AdmissibilityReport:
    residual_a = ps.lam - ps.lam_inv - ps.delta * (1 - ps.A[0])
    beta = closed_form_beta(ps)
    h = tuple(closed_form_h(ps, l) for l in range(1, ps.k))
    admissible = not residual_a and not beta and not any(h)
    return AdmissibilityReport(ps.domain, residual_a, beta, h, admissible)


def symbolic_params(k: int) -> ParamSet:
    """Generic parameters with ``A_0`` eliminated.

    Indeterminates are ``q, lambda, q0..q{k-1}, A1..A{k-1}``.  ``A_0`` is
    eliminated as ``1 - (lambda - lambda^-1)/delta`` because the
    representation V is only well defined once that relation holds.
    """
    names = ["q", "lambda"] + [f"q{i}" for i in range(k)] + [f"A{i}" for i in range(1, k)]
    dom = RationalFunctions(names)
    q, lam = dom.gen("q"), dom.gen("lambda")
    delta = q - 1 / q
    A0 = 1 - (lam - 1 / lam) / delta
    return ParamSet(
        k=k,
        domain=dom,
        q=q,
        lam=lam,
        qs=tuple(dom.gen(f"q{i}") for i in range(k)),
        A=(A0,) + tuple(dom.gen(f"A{i}") for i in range(1, k)),
    )


def symbolic_derive_h(k: int, ps: ParamSet | None = None):
    """Derive ``beta`` and ``h_1..h_{k-1}`` directly from the matrices of V.

    Computes ``q_0 (X - Y^-1 W Y^-1) v_0`` and expands it in the basis
    ``v_0, v_{-1}, .., v_{1-k}``; the coefficient of ``v_0`` is ``beta`` and
    that of ``v_{-l}`` is ``h_l``.  With ``ps`` omitted the fully generic
    parameters of :func:`symbolic_params` are used.
    """
    from .linalg import Matrix
    from .repv import build_v, v_extended

    if ps is None:
        ps = symbolic_params(k)
    rep = build_v(ps)
    defect = rep.X - rep.Yinv @ rep.W @ rep.Yinv
    target = [ps.qs[0] * x for x in defect.column(0)]
    basis = Matrix.from_columns(ps.domain, [v_extended(rep, -l) for l in range(k)])
    coeffs = basis.solve(target)
    return coeffs[0], list(coeffs[1:])


# ---------------------------------------------------------------------------
# admissible constructions
# ---------------------------------------------------------------------------

def normalize_sign(sign) -> str:
    s = str(sign).strip().lower()
    if s in ("+", "plus", "+1", "1"):
        return "plus"
    if s in ("-", "minus", "-1"):
        return "minus"
    raise ValueError(f"sign must be plus or minus, got {sign!r}")


def _beta_root(dom: Domain, k: int, q, lam, sign: str):
    lam_inv = dom.inv(lam)
    if k % 2:
        return lam_inv if sign == "plus" else -lam_inv
    if sign == "plus":
        return lam_inv * dom.inv(q)
    return -lam_inv * q


def _complete_admissible(dom: Domain, k: int, q, lam, q_tail: Sequence, sign: str) -> ParamSet:
    """Choose ``q_0`` and the ``A_i`` so the parameter set is admissible."""
    sign = normalize_sign(sign)
    q0 = _beta_root(dom, k, q, lam, sign)
    delta = q - dom.inv(q)
    A0 = 1 - (lam - dom.inv(lam)) * dom.inv(delta)
    A = [A0] + [dom.zero] * (k - 1)
    ps = ParamSet(k=k, domain=dom, q=q, lam=lam, qs=(q0, *q_tail), A=tuple(A))
    delta_inv = dom.inv(ps.delta)
    # h_l = (terms in A_1..A_{k-l-1}) - delta * A_{k-l}; solve l = k-1 down to 1
    for l in range(k - 1, 0, -1):
        A[k - l] = dom.zero
        A[k - l] = closed_form_h(ps, l, A) * delta_inv
    return ps.replace(A=tuple(A))


def generic_admissible(k: int, sign="plus") -> ParamSet:
    """Admissible parameters over the field ``Q(q, lambda, q1..q{k-1})``."""
    if k < 1:
        raise InvalidParameters("k must be positive")
    dom = RationalFunctions(["q", "lambda"] + [f"q{i}" for i in range(1, k)])
    q, lam = dom.gen("q"), dom.gen("lambda")
    tail = [dom.gen(f"q{i}") for i in range(1, k)]
    return _complete_admissible(dom, k, q, lam, tail, sign)


def random_admissible_finite_field(k: int, p: int, seed: int, sign="plus") -> ParamSet:
    """Seeded random admissible parameters over the prime field ``F_p``."""
    if k < 1:
        raise InvalidParameters("k must be positive")
    dom = PrimeField(p)
    rng = random.Random(seed)
    for _ in range(RESAMPLE_BUDGET):
        q = dom.from_int(rng.randrange(p))
        lam = dom.from_int(rng.randrange(p))
        tail = [dom.from_int(rng.randrange(p)) for _ in range(k - 1)]
        if not q or not lam or not (q - dom.inv(q)):
            continue
        return _complete_admissible(dom, k, q, lam, tail, sign)
    raise ExhaustedResampling(
        f"no usable parameters for k={k} over F_{p} after {RESAMPLE_BUDGET} draws"
    )
