import sys
from functools import lru_cache

import pytest

from bmw2k.algebra import Algebra
from bmw2k.coeff import Rationals
from bmw2k.params import ParamSet, generic_admissible, random_admissible_finite_field


def rational_k1(q0=(1, 3)) -> ParamSet:
    """k=1 over Q with q=2, lambda=3, A_0=-7/9 (so lambda - lambda^-1 = delta (1 - A_0))."""
    Q = Rationals()
    return ParamSet(1, Q, 2, 3, (Q.from_fraction(*q0),), (Q.from_fraction(-7, 9),))


@lru_cache(maxsize=None)
def generic_params(k: int, sign: str = "plus") -> ParamSet:
    return generic_admissible(k, sign)


@lru_cache(maxsize=None)
def ff_params(k: int, seed: int, p: int = 101) -> ParamSet:
    return random_admissible_finite_field(k, p, seed)


@lru_cache(maxsize=None)
def generic_algebra(k: int, sign: str = "plus") -> Algebra:
    return Algebra.from_params(generic_params(k, sign))


@lru_cache(maxsize=None)
def ff_algebra(k: int, seed: int, p: int = 101) -> Algebra:
    return Algebra.from_params(ff_params(k, seed, p))


@pytest.fixture
def k1_rational():
    return rational_k1()


@pytest.fixture
def k1_bad():
    return rational_k1(q0=(1, 2))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[n])
