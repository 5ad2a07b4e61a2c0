"""Acceptance gate: one exact check per criterion, each reporting a PASS/FAIL line.

Run under pytest (lines are echoed in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import itertools
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bmw2k.algebra import (  # noqa: E402
    Algebra,
    hecke_quotient_check,
    ideal_check,
    involution,
    multiply,
    one_element,
    verify_phi,
)
from bmw2k.coeff import RationalFunctions  # noqa: E402
from bmw2k.params import (  # noqa: E402
    ParamSet,
    admissibility_report,
    closed_form_beta,
    closed_form_h,
    random_admissible_finite_field,
    symbolic_derive_h,
    symbolic_params,
)
from bmw2k.repv import build_v, n_operator, verify_v, w_formula_holds  # noqa: E402
from bmw2k.repxi import build_xi, three_by_three_check, verify_xi  # noqa: E402
from conftest import ff_algebra, ff_params, generic_algebra, generic_params, rational_k1  # noqa: E402

RESULTS: dict[int, str] = {}
SEEDS = (0, 1, 2)


def record(n: int, ok: bool, title: str, detail: str) -> None:
    line = f"criterion {n:2d} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    RESULTS[n] = line
    print(line)


def criterion_sets():
    """(name, Algebra) for every parameter set of the freeness criterion."""
    for k in (1, 2, 3):
        for sign in ("plus", "minus"):
            yield f"generic k={k} {sign}", generic_algebra(k, sign)
    for k in (4, 5, 6):
        for seed in SEEDS:
            yield f"F101 k={k} seed={seed}", ff_algebra(k, seed)


def small_sets(kmax=4):
    for name, alg in criterion_sets():
        if alg.k <= kmax:
            yield name, alg


# ---------------------------------------------------------------------------

def check_1():
    failures, slowest = [], {"symbolic": 0.0, "finite": 0.0}
    cases = [(k, s, None) for k in (1, 2, 3) for s in ("plus", "minus")]
    cases += [(k, "plus", seed) for k in (4, 5, 6) for seed in SEEDS]
    for k, sign, seed in cases:
        ps = generic_params(k, sign) if seed is None else ff_params(k, seed)
        t0 = time.perf_counter()
        ok = verify_phi(Algebra.from_params(ps))
        dt = time.perf_counter() - t0
        kind = "symbolic" if seed is None else "finite"
        slowest[kind] = max(slowest[kind], dt)
        if not ok:
            failures.append((k, sign, seed))
    in_budget = slowest["symbolic"] < 60 and slowest["finite"] < 10
    ok = not failures and in_budget
    record(1, ok, "rank 3k^2 basis (verify_phi)",
           f"{len(cases) - len(failures)}/{len(cases)} sets; slowest symbolic {slowest['symbolic']:.1f}s, "
           f"finite field {slowest['finite']:.1f}s")
    return ok


def check_2():
    bad = []
    for name, alg in criterion_sets():
        rv, rx = verify_v(alg.rep.vrep), verify_xi(alg.rep)
        if not (rv.passed and rx.passed):
            bad.append(f"{name}: {rv.failures() + rx.failures()}")
    n = sum(1 for _ in criterion_sets())
    record(2, not bad, "module relations on V and Xi", f"{n - len(bad)}/{n} sets with all-zero residuals, failures {bad}")
    return not bad


def check_3():
    bad = []
    for k in range(1, 6):
        ps = symbolic_params(k)
        beta, h = symbolic_derive_h(k, ps)
        closed_h = [closed_form_h(ps, l) for l in range(1, k)]
        same_str = [ps.domain.to_str(x) for x in h] == [ps.domain.to_str(x) for x in closed_h]
        if beta != closed_form_beta(ps) or h != closed_h or not same_str:
            bad.append(k)
    record(3, not bad, "derived beta, h_l equal closed forms", f"k=1..5, mismatches {bad}")
    return not bad


def check_4():
    per_k, bad = 20, []
    for k in (1, 2, 3):
        for seed in range(per_k):
            base = random_admissible_finite_field(k, 101, seed)
            rng = random.Random(1000 * k + seed)
            i = rng.randrange(k)
            A = list(base.A)
            A[i] = A[i] + rng.randrange(1, 101)
            ps = base.replace(A=tuple(A))
            admissible = admissibility_report(ps).admissible
            xi = build_xi(ps)
            detected = not (verify_v(xi.vrep).passed and verify_xi(xi).passed and verify_phi(Algebra(xi)))
            if admissible or not detected:
                bad.append((k, seed, i))
            xi0 = build_xi(base)
            all_pass = verify_v(xi0.vrep).passed and verify_xi(xi0).passed and verify_phi(Algebra(xi0))
            if not (admissibility_report(base).admissible and all_pass):
                bad.append((k, seed, "admissible base"))
    record(4, not bad, "non-admissible sets detected", f"{3 * per_k} perturbed sets + {3 * per_k} admissible, failures {bad}")
    return not bad


def check_5():
    bad = []
    for name, alg in criterion_sets():
        vr = alg.rep.vrep
        if not n_operator(vr.Y, vr.X).is_zero():
            bad.append(name)
    n = sum(1 for _ in criterion_sets())
    record(5, not bad, "N = YXYX - 1 vanishes on V", f"{n - len(bad)}/{n} sets")
    return not bad


def check_6():
    bad = [(k, s) for k in range(1, 6) for s in ("plus", "minus") if not w_formula_holds(build_v(generic_params(k, s)))]
    record(6, not bad, "closed formula for W v_l", f"k=1..5 both signs, mismatches {bad}")
    return not bad


def _random_triples(dim, count, seed):
    rng = random.Random(seed)
    return [tuple(rng.randrange(dim) for _ in range(3)) for _ in range(count)]


def check_7():
    bad, counted = [], 0
    alg1 = Algebra.from_params(rational_k1())
    for r, s, t in itertools.product(range(3), repeat=3):
        counted += 1
        b = alg1.basis
        if multiply(multiply(b(r), b(s)), b(t)) != multiply(b(r), multiply(b(s), b(t))):
            bad.append(("k=1", r, s, t))
    algs = [("generic k=2", generic_algebra(2)), ("generic k=3", generic_algebra(3)), ("F101 k=4", ff_algebra(4, 0))]
    for name, alg in algs:
        for r, s, t in _random_triples(alg.dim, 200, alg.k):
            counted += 1
            b = alg.basis
            if multiply(multiply(b(r), b(s)), b(t)) != multiply(b(r), multiply(b(s), b(t))):
                bad.append((name, r, s, t))
    unit_bad = []
    for name, alg in [("rational k=1", alg1)] + algs + list(small_sets()):
        one = one_element(alg)
        for t in range(alg.dim):
            b = alg.basis(t)
            if multiply(one, b) != b or multiply(b, one) != b:
                unit_bad.append((name, t))
    ok = not bad and not unit_bad
    record(7, ok, "associativity and unit laws", f"{counted} triples, failures {bad}; unit-law failures {unit_bad}")
    return ok


def _random_element(alg, rng, terms=3):
    coeffs = [0] * alg.dim
    for _ in range(terms):
        coeffs[rng.randrange(alg.dim)] = rng.randint(-5, 5)
    return alg.element(coeffs)


def check_8():
    bad, pairs = [], 0
    algs = [("generic k=1", generic_algebra(1)), ("generic k=2", generic_algebra(2)),
            ("generic k=3", generic_algebra(3)), ("F101 k=4", ff_algebra(4, 0))]
    for name, alg in algs:
        S = alg.star_matrix()
        if not (S @ S).is_identity():
            bad.append((name, "S^2"))
        rng = random.Random(alg.k)
        for _ in range(100):
            pairs += 1
            a, b = _random_element(alg, rng), _random_element(alg, rng)
            if involution(multiply(a, b)) != multiply(involution(b), involution(a)):
                bad.append((name, a.to_dict(), b.to_dict()))
    record(8, not bad, "anti-involution", f"S^2 = 1 and (ab)* = b*a* on {pairs} pairs, failures {len(bad)}")
    return not bad


def check_9():
    bad = [name for name, alg in criterion_sets() if not ideal_check(alg).passed]
    n = sum(1 for _ in criterion_sets())
    record(9, not bad, "ideal generated by e", f"{n - len(bad)}/{n} sets pass, failures {bad}")
    return not bad


def check_10():
    bad, dims = [], set()
    for name, alg in small_sets(4):
        rep = hecke_quotient_check(alg)
        dims.add((alg.k, rep.dimension))
        if not rep.passed or rep.dimension != 2 * alg.k ** 2:
            bad.append(name)
    record(10, not bad, "Hecke quotient", f"dimensions {sorted(dims)}, failures {bad}")
    return not bad


def check_11():
    holds = [three_by_three_check(rational_k1())]
    holds += [three_by_three_check(generic_params(k, s)) for k in (1, 2, 3) for s in ("plus", "minus")]
    holds += [three_by_three_check(ff_params(k, seed)) for k in (4, 5, 6) for seed in SEEDS]
    R = RationalFunctions(["q", "lambda", "q0", "A0"])
    g = R.gen
    free = ParamSet(1, R, g("q"), g("lambda"), (g("q0"),), (g("A0"),))
    fails_when_free = not three_by_three_check(free)
    ok = all(holds) and fails_when_free
    record(11, ok, "3x3 check", f"holds on {sum(holds)}/{len(holds)} sets satisfying the A_0 relation; "
                                f"fails with free A0: {fails_when_free}")
    return ok


CHECKS = {n: globals()[f"check_{n}"] for n in range(1, 12)}


@pytest.mark.parametrize("n", sorted(CHECKS))
def test_criterion(n):
    assert CHECKS[n](), RESULTS.get(n)


if __name__ == "__main__":
    results = [CHECKS[n]() for n in sorted(CHECKS)]
    sys.exit(0 if all(results) else 1)
