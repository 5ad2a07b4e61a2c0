import pytest

from bmw2k.coeff import RationalFunctions
from bmw2k.linalg import Matrix, lincomb, unit_vector
from bmw2k.params import ParamSet, random_admissible_finite_field, symbolic_params
from bmw2k.repv import build_v
from bmw2k.repxi import (
    BasisClass,
    BasisIndex,
    basis_labels,
    build_xi,
    index_normalize,
    three_by_three_check,
    verify_xi,
    xi_matrices_dict,
)

from conftest import generic_params, rational_k1

V, U, W = BasisClass.V, BasisClass.U, BasisClass.W


def test_flat_index_bijection():
    for k in (1, 2, 3, 4):
        seen = set()
        for t in range(3 * k * k):
            b = BasisIndex.from_flat(k, t)
            assert b.flat(k) == t
            seen.add((b.cls, b.i, b.j))
        assert len(seen) == 3 * k * k
    assert basis_labels(1) == ["v[0][0]", "u[0][0]", "w[0][0]"]
    assert basis_labels(2)[4] == "u[0][0]"


def test_index_normalize_examples():
    ps = symbolic_params(2)
    vrep = build_v(ps)
    dom = ps.domain
    q0, q1 = ps.qs
    assert index_normalize(vrep, U, 0, 0) == unit_vector(dom, 12, 4)
    expected = [dom.zero] * 12
    expected[BasisIndex(V, 0, 0).flat(2)] = q0
    expected[BasisIndex(V, 1, 0).flat(2)] = q1
    assert index_normalize(vrep, V, 2, 0) == expected
    expected = [dom.zero] * 12
    expected[BasisIndex(W, 0, 1).flat(2)] = 1 / q0
    expected[BasisIndex(W, 0, 0).flat(2)] = -q1 / q0
    assert index_normalize(vrep, W, 0, -1) == expected


@pytest.mark.parametrize("k", [1, 2, 3])
def test_index_normalize_satisfies_recurrence(k):
    ps = symbolic_params(k)
    vrep = build_v(ps)
    n = 3 * k * k
    for cls in BasisClass:
        for i in range(-k, k + 1):
            for j in range(-k, k + 1):
                in_i = lincomb(ps.domain, [(ps.q_ext(l), index_normalize(vrep, cls, i + l, j)) for l in range(k + 1)], n)
                in_j = lincomb(ps.domain, [(ps.q_ext(l), index_normalize(vrep, cls, i, j + l)) for l in range(k + 1)], n)
                assert not any(in_i) and not any(in_j)


def test_k1_e_on_u(k1_rational):
    xi = build_xi(k1_rational)
    assert xi.E.column(xi.flat(U, 0, 0)) == [k1_rational.lam, 0, 0]
    assert xi.E.column(xi.flat(W, 0, 0)) == [k1_rational.lam**2, 0, 0]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_explicit_columns(k):
    ps = generic_params(k)
    xi = build_xi(ps)
    for i in range(k):
        for j in range(k):
            assert xi.X.column(xi.flat(U, i, j)) == xi.unit(W, i, j)
    # Y w_{1j} = w_{1,j+1}, which needs k >= 2 for w_{1j} to be in the window
    if k >= 2:
        for j in range(k):
            assert xi.Y.column(xi.flat(W, 1, j)) == index_normalize(xi.vrep, W, 1, j + 1)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("sign", ["plus", "minus"])
def test_verify_xi_generic(k, sign):
    xi = build_xi(generic_params(k, sign))
    report = verify_xi(xi)
    assert report.passed, report.failures()
    assert (xi.Y @ xi.Yinv).is_identity()
    assert xi.Yinv == xi.Y.inverse()


def test_verify_xi_finite_field_example():
    assert verify_xi(build_xi(random_admissible_finite_field(4, 101, 1))).passed


def test_verify_xi_non_admissible(k1_bad):
    report = verify_xi(build_xi(k1_bad))
    assert not report.passed
    assert "E Y X Y = lambda^-1 E" in report.failures()


@pytest.mark.parametrize("k", [2, 3])
def test_v_class_block_is_invariant_and_matches_v(k):
    ps = generic_params(k)
    xi = build_xi(ps)
    kk = k * k
    vcols = range(kk)
    rest = range(kk, 3 * kk)
    for M, Mv in ((xi.Y, xi.vrep.Y), (xi.X, xi.vrep.X), (xi.E, xi.vrep.E), (xi.Yinv, xi.vrep.Yinv)):
        assert M.submatrix(rest, vcols).is_zero()
        block = M.submatrix(vcols, vcols)
        eye = Matrix.identity(ps.domain, k)
        assert block == Mv.kron(eye)


@pytest.mark.parametrize("k", [2, 3])
def test_image_of_e_lies_in_first_row_of_v_class(k):
    xi = build_xi(generic_params(k))
    allowed = {xi.flat(V, 0, j) for j in range(k)}
    for r in range(xi.dim):
        if r not in allowed:
            assert all(not x for x in xi.E.rows[r])


def test_n_vanishes_only_on_v_class():
    xi = build_xi(generic_params(2))
    N = xi.Y @ xi.X @ xi.Y @ xi.X - Matrix.identity(xi.domain, xi.dim)
    assert N.submatrix(range(xi.dim), range(4)).is_zero()
    assert not N.is_zero()


def test_three_by_three():
    assert three_by_three_check(rational_k1())
    for k in (1, 2, 3):
        assert three_by_three_check(generic_params(k, "minus"))
    R = RationalFunctions(["q", "lambda", "q0", "A0"])
    g = R.gen
    free = ParamSet(1, R, g("q"), g("lambda"), (g("q0"),), (g("A0"),))
    assert not three_by_three_check(free)


def test_matrix_dump(k1_rational):
    data = xi_matrices_dict(build_xi(k1_rational))
    assert data["basis"] == ["v[0][0]", "u[0][0]", "w[0][0]"]
    assert data["E"][0] == ["-7/9", "3", "9"]
    assert set(data) == {"k", "basis", "Y", "Yinv", "X", "Xinv", "E"}
