import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from orbitlift.checks import _dominance_body
from orbitlift.dlinalg import DMatrix, ShapeError, rank
from orbitlift.dualpair import (
    DualPair,
    NotInCentralizerError,
    StableRangeError,
    WSpace,
    J_T,
    alpha_T,
    build_moment_lift,
    in_centralizer,
    isotropic_split,
    lift_block,
    moment,
    phi_T,
    sigma_report,
    stable_range_lift,
)
from orbitlift.hermitian import HermitianModule
from orbitlift.sampling import rand_combination, rand_lie_element, rand_mtilde, rand_n_element
from orbitlift.scalars import FIELD, AlgebraSpec
from orbitlift.sl2 import NotInSubalgebraError
from orbitlift.tableaux import YoungTableau

DATA = Path(__file__).resolve().parent.parent / "data"
SYMP2 = HermitianModule(DMatrix.from_entries(FIELD, [[0, 1], [-1, 0]]), -1)
LINE = HermitianModule.diagonal([1])


def load(name):
    return YoungTableau.from_json(json.loads((DATA / name).read_text()))


@pytest.fixture(scope="module")
def lift14():
    tab, eps = load("example14.json")
    return build_moment_lift(tab, eps)


def test_moment_example():
    pair = DualPair(SYMP2, HermitianModule.diagonal([1, 1, 1]))
    T = DMatrix.from_entries(FIELD, [[1, 0], [0, 0], [0, 0]])
    x, xt = moment(T, pair)
    assert x == DMatrix.from_entries(FIELD, [[0, 0], [1, 0]])
    assert (xt @ xt).is_zero() and (x @ x).is_zero()
    with pytest.raises(ShapeError):
        moment(DMatrix.zeros(FIELD, 2, 2), pair)


def test_pair_validation():
    with pytest.raises(ValueError):
        DualPair(SYMP2, HermitianModule.hyperbolic(2))
    with pytest.raises(ValueError):
        DualPair(HermitianModule.hyperbolic(4), LINE)


def test_pairing_is_antisymmetric():
    rng = random.Random(0)
    pair = DualPair(SYMP2, HermitianModule.diagonal([1, -1, 2]))
    from orbitlift.sampling import rand_dmatrix

    for _ in range(5):
        A, B = rand_dmatrix(rng, FIELD, 3, 2), rand_dmatrix(rng, FIELD, 3, 2)
        assert pair.pairing(A, B) == -pair.pairing(B, A)


@pytest.mark.parametrize("t", range(1, 8))
def test_lift_block(t):
    tau = lift_block(t)
    assert tau.shape == (t + 1, t)
    for r in range(t + 1):
        for c in range(t):
            assert tau[r, c] == (Fraction(t - c, t) if r == c else 0)


def test_regular_lift():
    lift = build_moment_lift(YoungTableau.diagonal([(2, 1, [1])]), -1)
    assert lift.tableau_t.partition == [3]
    assert lift.T == DMatrix.from_entries(FIELD, [[1, 0], [0, "1/2"], [0, 0]])
    assert all(lift.checks().values())


def test_lift_with_hyperbolic_row():
    lift = build_moment_lift(YoungTableau.diagonal([(1, 1, [1, 1])]), 1, dim_Vtilde=6)
    assert lift.tableau_t.partition == [2, 2, 1, 1]
    assert all(lift.checks().values())


def test_lift_of_partition_of_14(lift14):
    assert lift14.tableau_t.exponent_notation() == "[4^2,3^3,2^2]"
    assert lift14.Vtilde.dim == 21
    checks = lift14.checks()
    assert checks == {k: True for k in checks}
    assert set(checks) == {"adjoint_square", "adjoint_square_tilde", "grading_shift",
                           "full_rank", "rank_pattern", "jordan_type"}


def test_lift_json(lift14):
    doc = json.loads(json.dumps(lift14.to_json()))
    assert DMatrix.from_json(FIELD, doc["T"]) == lift14.T
    assert all(doc["checks"].values())


def test_quaternionic_lift():
    ham = AlgebraSpec.quaternion(-1, -1)
    tab = YoungTableau.from_forms([(1, HermitianModule.diagonal([1, 2], 1, ham))])
    lift = build_moment_lift(tab, 1, dim_Vtilde=5)
    assert lift.tableau_t.partition == [2, 2, 1]
    assert all(lift.checks().values())


@pytest.mark.parametrize("dim_v,dim_vt", [(2, 4), (2, 5), (4, 8), (6, 12)])
def test_stable_range_lift(dim_v, dim_vt):
    rng = random.Random(dim_v * 100 + dim_vt)
    V = HermitianModule.hyperbolic(dim_v)
    Vt = HermitianModule.diagonal([1, -1] * (dim_vt // 2) + [1] * (dim_vt % 2))
    pair = DualPair(V, Vt)
    E, F = isotropic_split(Vt, dim_v)
    assert (E.ct() @ Vt.gram @ E).is_zero() and (F.ct() @ Vt.gram @ F).is_zero()
    for _ in range(3):
        X = rand_lie_element(rng, V)
        T = stable_range_lift(X, pair, (E, F))
        assert moment(T, pair)[0] == X
        assert rank(T) == dim_v


def test_stable_range_failures():
    # a definite form has no isotropic vectors
    with pytest.raises(StableRangeError):
        isotropic_split(HermitianModule.diagonal([1, 1, 1, 1]), 1)
    pair = DualPair(SYMP2, HermitianModule.diagonal([1, -1, 1, -1]))
    with pytest.raises(NotInSubalgebraError):
        stable_range_lift(DMatrix.identity(FIELD, 2), pair)


def test_phi_of_minus_identity():
    lift = build_moment_lift(YoungTableau.diagonal([(2, 1, [1])]), -1)
    m = -DMatrix.identity(FIELD, 3)
    assert in_centralizer(m, lift.Vtilde, lift.gamma_t)
    assert phi_T(lift, m) == -DMatrix.identity(FIELD, 2)
    with pytest.raises(NotInCentralizerError):
        phi_T(lift, DMatrix.identity(FIELD, 3) * 2)


def test_phi_is_a_homomorphism(lift14):
    rng = random.Random(3)
    for _ in range(3):
        a, b = rand_mtilde(rng, lift14, 5), rand_mtilde(rng, lift14, 5)
        pa, pb = phi_T(lift14, a), phi_T(lift14, b)
        assert a @ lift14.T == lift14.T @ pa
        assert phi_T(lift14, a @ b) == pa @ pb


def test_sigma(lift14):
    rep = sigma_report(lift14)
    assert rep["dims_match"] and rep["images_in_W"] and rep["bijective"] and rep["gram_matches"]
    assert rep["dim_W"] == rep["dim_g_minus1"] + rep["dim_gt_minus1"]


def test_J_T_rejects_wrong_degree(lift14):
    zt = DMatrix.zeros(FIELD, 21, 21)
    with pytest.raises(NotInSubalgebraError):
        J_T(lift14, lift14.grading.g_basis(-2)[0], zt)


def test_wspace_coordinates(lift14):
    W = WSpace(lift14)
    basis = W.basis()
    assert len(basis) == W.dim
    rng = random.Random(4)
    M = rand_combination(rng, basis)
    coords = W.coordinates(M)
    back = sum((b * c for b, c in zip(basis, coords)), basis[0] * 0)
    assert back == M
    with pytest.raises(NotInSubalgebraError):
        W.coordinates(lift14.T)


def test_alpha_T_is_a_homomorphism(lift14):
    W = WSpace(lift14)
    H = W.heisenberg_group()
    rng = random.Random(5)
    for _ in range(3):
        n1, n2 = rand_n_element(rng, lift14.grading), rand_n_element(rng, lift14.grading)
        m1, m2 = rand_n_element(rng, lift14.grading_t), rand_n_element(rng, lift14.grading_t)
        lhs = alpha_T(lift14, n1 @ n2, m1 @ m2)
        rhs = H.mul(alpha_T(lift14, n1, m1), alpha_T(lift14, n2, m2))
        assert lhs == rhs


def test_dominance(lift14):
    body = _dominance_body(10)
    rng = random.Random(6)
    for _ in range(5):
        ok, witness = body(rng, lift14)
        assert ok, witness
