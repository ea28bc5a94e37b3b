import json
import random
from pathlib import Path

import pytest

from orbitlift.dlinalg import DMatrix, bracket, inverse, nilpotent_exp, qrank
from orbitlift.hermitian import HermitianModule, kappa
from orbitlift.sampling import rand_combination, rand_n_element
from orbitlift.scalars import FIELD, AlgebraSpec
from orbitlift.sl2 import (
    InvalidTripleError,
    NotInSubalgebraError,
    Sl2Triple,
    alpha_gamma,
    character_functional,
    grade,
    grading_report,
    heisenberg_coordinates,
    heisenberg_group,
    highest_weight_forms,
    kappa_minus1,
    kappa_minus1_alt,
    kappa_minus1_gram,
    lagrangian_split,
    mx_dimension_report,
    sign_identity_failures,
    weight_forms,
)
from orbitlift.tableaux import YoungTableau, build_module

DATA = Path(__file__).resolve().parent.parent / "data"


def regular():
    return build_module(YoungTableau.diagonal([(2, 1, [1])]), -1)


@pytest.fixture(scope="module")
def big():
    tab, eps = YoungTableau.from_json(json.loads((DATA / "example14.json").read_text()))
    V, gamma = build_module(tab, eps)
    return tab, gamma, grade(gamma)


def test_zero_triple_is_a_triple():
    V = HermitianModule.diagonal([1, -1, 2])
    z = Sl2Triple.zero(V)
    assert z.failed_relations() == []
    G = grade(z)
    assert list(G.V_weights) == [0]
    assert grading_report(G)["dim_n"] == 0


def test_bad_triple_is_rejected():
    V = HermitianModule.hyperbolic(2)
    X = DMatrix.from_entries(FIELD, [[0, 1], [0, 0]])
    Y = DMatrix.from_entries(FIELD, [[0, 0], [1, 0]])
    H = DMatrix.from_entries(FIELD, [[1, 0], [0, -1]])
    Sl2Triple(V, X, H, Y)
    with pytest.raises(InvalidTripleError):
        Sl2Triple(V, X, H, Y * 2)
    # X is not in g(V) for a symmetric form
    W = HermitianModule.diagonal([1, 1])
    assert "X*=-X" in Sl2Triple(W, X, H, Y, check=False).failed_relations()


def test_regular_grading():
    _, gamma = regular()
    rep = grading_report(grade(gamma))
    assert rep["V_dims"] == {"-1": 1, "1": 1}
    assert rep["g_dims"] == {"-2": 1, "0": 1, "2": 1}
    assert rep["dim_u"] == rep["dim_n"] == 1


def test_regular_top_form():
    # B_1(v0, v0) for the regular orbit; frozen from the computation
    _, gamma = regular()
    ((t, (P, gram)),) = highest_weight_forms(gamma).items()
    assert t == 2
    assert gram == DMatrix.from_entries(FIELD, [[-1]])
    forms = weight_forms(gamma)
    assert forms[1] == DMatrix.from_entries(FIELD, [[-1]])
    assert forms[-1] == DMatrix.from_entries(FIELD, [[1]])


def test_grading_of_partition_of_14(big):
    _, gamma, G = big
    rep = grading_report(G)
    assert rep["V_dims"] == {"-2": 2, "-1": 3, "0": 4, "1": 3, "2": 2}
    assert rep["g_dims"] == {"-4": 3, "-3": 6, "-2": 14, "-1": 18, "0": 23, "1": 18, "2": 14, "3": 6, "4": 3}
    assert sum(len(b) for b in G.g_weights.values()) == 14 * 15 // 2
    assert rep["dim_n"] == 41 and rep["dim_u"] == 23


def test_grading_commutes(big):
    _, gamma, G = big
    rng = random.Random(0)
    for i in (-2, -1, 0, 1):
        for j in (-1, 0, 2):
            A = rand_combination(rng, G.g_basis(i))
            B = rand_combination(rng, G.g_basis(j))
            assert G.degrees_of(bracket(A, B)) <= {i + j}


def test_grade_diagonalizes_conjugated_triple():
    _, gamma = regular()
    P = DMatrix.from_entries(FIELD, [[1, 1], [0, 1]])
    Pi = inverse(P)
    V = HermitianModule(Pi.ct() @ gamma.module.gram @ Pi, -1)
    conj = Sl2Triple(V, P @ gamma.X @ Pi, P @ gamma.H @ Pi, P @ gamma.Y @ Pi)
    G = grade(conj)
    assert G.basis_change is not None
    assert sorted(G.weights) == [-1, 1]
    assert G.triple.failed_relations() == []


def test_sign_identity(big):
    _, gamma, G = big
    assert sign_identity_failures(gamma, G) == []


def test_kappa_minus1_forms(big):
    _, gamma, G = big
    K = kappa_minus1_gram(G)
    assert K.shape == (18, 18)
    assert (K.T == -K).all()
    assert qrank(K) == 18
    basis = G.g_basis(-1)
    rng = random.Random(4)
    for _ in range(5):
        S, T = rand_combination(rng, basis), rand_combination(rng, basis)
        assert kappa_minus1(gamma, G, S, T) == kappa_minus1_alt(gamma, G, S, T)
    with pytest.raises(NotInSubalgebraError):
        kappa_minus1(gamma, G, G.g_basis(-2)[0], basis[0])


def test_lagrangian_split(big):
    _, _, G = big
    K = kappa_minus1_gram(G)
    E, F = lagrangian_split(K)
    assert len(E) == len(F) == 9
    for a in range(9):
        for b in range(9):
            assert E[a].dot(K.dot(E[b])) == 0
            assert F[a].dot(K.dot(F[b])) == 0
            assert E[a].dot(K.dot(F[b])) == (1 if a == b else 0)


def test_character_is_additive_and_invariant(big):
    _, gamma, G = big
    chi = character_functional(G)
    rng = random.Random(5)
    u = G.u_basis
    for _ in range(5):
        A, B = rand_combination(rng, u), rand_combination(rng, u)
        assert chi(A + B) == chi(A) + chi(B)
        # kappa(X, .) only sees the degree -2 part
        Z = rand_combination(rng, G.g_basis(-3))
        assert chi(Z) == 0
    with pytest.raises(NotInSubalgebraError):
        chi(G.g_basis(-1)[0])


def test_heisenberg_coordinates_roundtrip(big):
    _, gamma, G = big
    rng = random.Random(6)
    for _ in range(5):
        n = rand_n_element(rng, G)
        T, Z = heisenberg_coordinates(n, G)
        assert G.degrees_of(T) <= {-1} and G.in_u(Z)
        assert nilpotent_exp(T) @ nilpotent_exp(Z) == n
    with pytest.raises(NotInSubalgebraError):
        heisenberg_coordinates(nilpotent_exp(G.g_basis(1)[0]), G)


@pytest.mark.parametrize("sign", [1, -1])
def test_alpha_gamma_is_a_homomorphism(big, sign):
    _, gamma, G = big
    H = heisenberg_group(G, sign)
    rng = random.Random(7 + sign)
    for _ in range(5):
        a, b = rand_n_element(rng, G), rand_n_element(rng, G)
        lhs = alpha_gamma(a @ b, gamma, G, sign)
        rhs = H.mul(alpha_gamma(a, gamma, G, sign), alpha_gamma(b, gamma, G, sign))
        assert lhs == rhs
    one = DMatrix.identity(FIELD, G.dim)
    assert alpha_gamma(one, gamma, G, sign) == H.identity()


def test_heisenberg_group_laws(big):
    _, _, G = big
    H = heisenberg_group(G)
    rng = random.Random(8)
    from orbitlift.sl2 import HeisenbergElement

    xs = [HeisenbergElement(rand_combination(rng, G.g_basis(-1)), rng.randint(-5, 5)) for _ in range(3)]
    a, b, c = xs
    assert H.mul(H.mul(a, b), c) == H.mul(a, H.mul(b, c))
    assert H.mul(a, H.inv(a)) == H.identity()


def test_mx_dimension(big):
    tab, gamma, G = big
    rep = mx_dimension_report(gamma, G)
    assert rep["equal"] and rep["dim_m_X"] == 9
    assert [p["t"] for p in rep["pieces"]] == [3, 2, 1]
    assert mx_dimension_report(gamma, G, tableau=tab) == rep


def test_quaternionic_grading():
    ham = AlgebraSpec.quaternion(-1, -1)
    tab = YoungTableau.from_forms([(2, HermitianModule.diagonal([1], 1, ham))])
    V, gamma = build_module(tab, -1)
    G = grade(gamma)
    assert mx_dimension_report(gamma, G)["equal"]
    assert sign_identity_failures(gamma, G) == []
    # V = H^2 with a skew-Hermitian form, so dim g = 2 * (2 * 2 - 1) = 6
    assert grading_report(G)["g_dims"] == {"-2": 1, "0": 4, "2": 1}
    assert kappa(gamma.X, gamma.Y, V) != 0
