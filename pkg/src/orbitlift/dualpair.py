"""
Dual pairs (V, V~) with opposite signs, moment maps and the lift of a
nilpotent orbit to the canonical map T with T*T = X and TT* = X~.
"""

from functools import cached_property
from math import isqrt

import numpy as np

from .dlinalg import (
    DMatrix,
    ShapeError,
    SingularMatrixError,
    hstack,
    inverse,
    nilpotency_index,
    qarray,
    qnullspace,
    qrank,
    qzeros,
    rank,
    solve_left,
    trace_k_product,
)
from .hermitian import adjoint, is_isometry, is_lie_algebra_element
from .scalars import ONE, ZERO, rat
from .sl2 import (
    HeisenbergElement,
    HeisenbergGroup,
    NotInSubalgebraError,
    alpha_gamma,
    grade,
    kappa_minus1_gram,
)
from .tableaux import block_layout, build_module, jordan_type, sl2_rep, theta_lift_tableau


class StableRangeError(ValueError):
    pass


class NotInCentralizerError(ValueError):
    pass


class DualPair:
    """(V, V~) with epsilon * epsilon~ = -1 over one algebra."""

    def __init__(self, V, Vtilde, check_dims=True):
        if V.epsilon * Vtilde.epsilon != -1:
            raise ValueError("signs must satisfy epsilon * epsilon~ = -1")
        if V.algebra != Vtilde.algebra:
            raise ValueError("modules live over different algebras")
        if check_dims and V.dim > Vtilde.dim:
            raise ValueError("need dim V <= dim V~")
        self.V = V
        self.Vtilde = Vtilde

    def adjoint(self, T):
        return adjoint(T, self.V, self.Vtilde)

    def pairing(self, T, S):
        """<T, S> = Tr(T* S) on Hom(V, V~); antisymmetric since T** = -T."""
        return trace_k_product(self.adjoint(T), S)


def moment(T, pair):
    """(T*T, TT*): the two moment maps."""
    if T.shape != (pair.Vtilde.dim, pair.V.dim):
        raise ShapeError("T must map V to V~")
    Ts = pair.adjoint(T)
    return Ts @ T, T @ Ts


# -- stable range ------------------------------------------------------------

def _rational_sqrt(x):
    if x < 0:
        return None
    p, q = int(x.numerator), int(x.denominator)
    a, b = isqrt(p), isqrt(q)
    if a * a == p and b * b == q:
        return rat(a) / b
    return None


def _rational_roots(c2, c1, c0):
    if c2 == 0:
        return [] if c1 == 0 else [-c0 / c1]
    r = _rational_sqrt(c1 * c1 - 4 * c2 * c0)
    if r is None:
        return []
    return sorted({(-c1 + r) / (2 * c2), (-c1 - r) / (2 * c2)})


def _find_isotropic(M, cols):
    """A nonzero isotropic vector in the span of cols: a column, or c_a + c_b * lam."""
    for c in cols:
        if M.form(c, c).is_zero():
            return c
    for a in range(len(cols)):
        for b in range(a + 1, len(cols)):
            ca, cb = cols[a], cols[b]
            q0 = M.form(ca, ca).coeffs
            q1 = (M.form(ca, cb) + M.form(cb, ca)).coeffs
            q2 = M.form(cb, cb).coeffs
            polys = [(q2[p][0, 0], q1[p][0, 0], q0[p][0, 0]) for p in range(len(q0))]
            lead = next((pl for pl in polys if any(pl)), None)
            if lead is None:
                continue
            for lam in _rational_roots(*lead):
                if lam and all(c2 * lam * lam + c1 * lam + c0 == 0 for c2, c1, c0 in polys):
                    return ca + cb * lam
    return None


def _independent(cols):
    out = []
    span = None
    for c in cols:
        trial = c.realize() if span is None else np.concatenate([span, c.realize()], axis=1)
        if qrank(trial) > (0 if span is None else qrank(span)):
            out.append(c)
            span = trial
    return out


def isotropic_split(M, n):
    """Totally isotropic E, F (dim n each) with B(e_a, f_b) = delta_ab, found greedily.

    The search looks at basis vectors and two-term combinations with a rational
    coefficient, so it can miss isotropic vectors that need more terms.
    """
    alg = M.algebra
    eps = M.epsilon
    cols = [DMatrix.identity(alg, M.dim).sub(range(M.dim), [k]) for k in range(M.dim)]
    E, F = [], []
    while len(E) < n:
        e = _find_isotropic(M, cols)
        if e is None:
            raise StableRangeError("found only %d of %d hyperbolic pairs" % (len(E), n))
        partner = None
        for c in cols:
            b = M.form(e, c).entry(0, 0)
            if not b.is_zero():
                partner = c.right_scale(b.inv())
                break
        if partner is None:
            raise StableRangeError("isotropic vector is in the radical")
        f = partner
        c = M.form(f, f).entry(0, 0) * (rat(eps) / 2)
        f = f - e.right_scale(c)
        E.append(e)
        F.append(f)
        proj = []
        for v in cols:
            a = M.form(f, v).entry(0, 0) * rat(eps)
            b = M.form(e, v).entry(0, 0)
            w = v - e.right_scale(a) - f.right_scale(b)
            if not w.is_zero():
                proj.append(w)
        cols = _independent(proj)
    return hstack(E) if E else DMatrix.zeros(alg, M.dim, 0), hstack(F) if F else DMatrix.zeros(alg, M.dim, 0)


def stable_range_lift(X, pair, split=None):
    """Injective T : V -> V~ with T*T = X, for any X in g(V), given V~ in the stable range."""
    V, Vt = pair.V, pair.Vtilde
    if not is_lie_algebra_element(X, V):
        raise NotInSubalgebraError("X is not in g(V)")
    E, F = split if split is not None else isotropic_split(Vt, V.dim)
    if not (E.ct() @ Vt.gram @ E).is_zero() or not (F.ct() @ Vt.gram @ F).is_zero():
        raise StableRangeError("supplied split is not totally isotropic")
    if not E.ct() @ Vt.gram @ F == DMatrix.identity(V.algebra, V.dim):
        raise StableRangeError("supplied split is not in duality")
    # T_E identifies the standard basis of V with E; T_E* restricted to F is gram_V^{-1}
    T = E + F @ V.gram @ X / 2
    if rank(T) != V.dim or not pair.adjoint(T) @ T == X:
        raise ArithmeticError("stable range construction failed")
    return T


# -- the canonical lift --------------------------------------------------------

def lift_block(t):
    """tau : k^t -> k^{t+1} with tau X = X~ tau, raising weights by one, tau(v0) = v0~."""
    X, H, _ = sl2_rep(t)
    Xt, Ht, _ = sl2_rep(t + 1)
    unknowns = [(r, c) for r in range(t + 1) for c in range(t)]
    idx = {p: u for u, p in enumerate(unknowns)}
    rows = []

    def add(coeffs):
        eq = [ZERO] * len(unknowns)
        for p, v in coeffs:
            eq[idx[p]] += v
        if any(eq):
            rows.append(eq)

    for r in range(t + 1):
        for c in range(t):
            # (tau X - X~ tau)[r, c] = 0
            add([((r, k), X[k, c]) for k in range(t) if X[k, c]]
                + [((k, c), -Xt[r, k]) for k in range(t + 1) if Xt[r, k]])
            # (tau (H + 1) - H~ tau)[r, c] = 0
            add([((r, c), H[c, c] + 1 - Ht[r, r])])
    sols = qnullspace(qarray(rows))
    if len(sols) != 1:
        raise ArithmeticError("lift block for t=%d is not unique up to scale" % t)
    sol = sols[0]
    tau = qzeros(t + 1, t)
    for u, (r, c) in enumerate(unknowns):
        tau[r, c] = sol[u]
    return tau / tau[0, 0]


class MomentLift:
    """T : V -> V~ in the lift of gamma to gamma~, with its gradings."""

    def __init__(self, pair, T, gamma, gamma_t, tableau=None, tableau_t=None):
        self.pair = pair
        self.T = T
        self.gamma = gamma
        self.gamma_t = gamma_t
        self.tableau = tableau
        self.tableau_t = tableau_t

    @property
    def V(self):
        return self.pair.V

    @property
    def Vtilde(self):
        return self.pair.Vtilde

    @cached_property
    def grading(self):
        return grade(self.gamma)

    @cached_property
    def grading_t(self):
        return grade(self.gamma_t)

    @cached_property
    def Tstar(self):
        return self.pair.adjoint(self.T)

    def component(self, k):
        """T_k : V_k -> V~_{k+1}."""
        return self.T.sub(self.grading_t.indices(k + 1), self.grading.indices(k))

    def components(self):
        return {k: self.component(k) for k in self.grading.V_weights}

    def grading_shift_ok(self):
        w, wt = self.grading.weights, self.grading_t.weights
        for c in self.T.coeffs:
            for r, k in zip(*np.nonzero(np.vectorize(bool, otypes=[bool])(c))):
                if wt[r] != w[k] + 1:
                    return False
        return True

    def rank_pattern_ok(self):
        for k, Tk in self.components().items():
            r = rank(Tk) if Tk.rows and Tk.cols else 0
            if k < 0 and r != Tk.cols:
                return False
            if k >= 0 and r != Tk.rows:
                return False
        return True

    def checks(self):
        X, Xt = self.gamma.X, self.gamma_t.X
        out = {
            "adjoint_square": self.Tstar @ self.T == X,
            "adjoint_square_tilde": self.T @ self.Tstar == Xt,
            "grading_shift": self.grading_shift_ok(),
            "full_rank": rank(self.T) == self.V.dim,
            "rank_pattern": self.rank_pattern_ok(),
        }
        if self.tableau_t is not None:
            out["jordan_type"] = jordan_type(self.T @ self.Tstar) == self.tableau_t.partition
        return out

    def to_json(self):
        return {
            "T": self.T.to_json(),
            "X": self.gamma.X.to_json(),
            "Xtilde": self.gamma_t.X.to_json(),
            "checks": self.checks(),
        }


def build_moment_lift(tableau, epsilon, dim_Vtilde=None, new_row_form=None):
    """The canonical T lifting build_module(tableau) to build_module(theta lift).

    dim_Vtilde defaults to the smallest value, dim V + number of parts.
    """
    if dim_Vtilde is None:
        dim_Vtilde = tableau.size + tableau.num_parts
    tableau_t = theta_lift_tableau(tableau, epsilon, dim_Vtilde, new_row_form)
    V, gamma = build_module(tableau, epsilon)
    Vt, gamma_t = build_module(tableau_t, -epsilon)
    alg = tableau.algebra
    T = DMatrix.zeros(alg, Vt.dim, V.dim)
    # lifted rows come first in the lifted tableau, in the same order
    for (row, off), (_, off_t) in zip(block_layout(tableau), block_layout(tableau_t)):
        tau = lift_block(row.t)
        t = row.t
        for a in range(row.mult):
            r0, c0 = off_t + a * (t + 1), off + a * t
            T.coeffs[0][r0:r0 + t + 1, c0:c0 + t] = tau
    return MomentLift(DualPair(V, Vt), T, gamma, gamma_t, tableau, tableau_t)


# -- M~_X~ and phi_T -------------------------------------------------------------

def in_centralizer(m, module, triple):
    """m is an isometry commuting with H and X."""
    if m.shape != (module.dim, module.dim):
        return False
    return (is_isometry(m, module) and m @ triple.H == triple.H @ m
            and m @ triple.X == triple.X @ m)


def phi_T(lift, mt, check=True):
    """The unique phi with mt T = T phi."""
    if check and not in_centralizer(mt, lift.Vtilde, lift.gamma_t):
        raise NotInCentralizerError("element is not in M~_X~")
    try:
        phi = solve_left(lift.T, mt @ lift.T)
    except SingularMatrixError as exc:
        raise NotInCentralizerError("element does not preserve T(V)") from exc
    if check and not in_centralizer(phi, lift.V, lift.gamma):
        raise ArithmeticError("phi_T left M_X")
    return phi


def centralizer_lie_basis(grading):
    """Q-basis of m_X = {Z in g_0 : [Z, X] = 0}."""
    from .dlinalg import bracket, stack_vecs

    basis = grading.m_basis
    if not basis:
        return []
    X = grading.triple.X
    sols = qnullspace(stack_vecs([bracket(Z, X) for Z in basis]))
    out = []
    for s in sols:
        Z = DMatrix.zeros(grading.algebra, grading.dim, grading.dim)
        for c, b in zip(s, basis):
            if c:
                Z = Z + b * c
        out.append(Z)
    return out


def nilpotent_centralizer_elements(grading):
    return [Z for Z in centralizer_lie_basis(grading) if nilpotency_index(Z) is not None]


def cayley(Z):
    """(I + Z)(I - Z)^{-1}, an isometry when Z is in g and I - Z is invertible."""
    n = Z.rows
    I = DMatrix.identity(Z.algebra, n)
    return (I + Z) @ inverse(I - Z)


# -- W and J_T ---------------------------------------------------------------------

class WSpace:
    """W = sum_k Hom(V_k, V~_k) with the symplectic form <T, S> = Tr(T* S)."""

    def __init__(self, lift):
        self.lift = lift
        w, wt = lift.grading.weights, lift.grading_t.weights
        self.positions = [(r, c) for r in range(len(wt)) for c in range(len(w)) if wt[r] == w[c]]
        self.d = lift.V.algebra.dim

    @property
    def dim(self):
        return len(self.positions) * self.d

    def basis(self):
        alg = self.lift.V.algebra
        out = []
        for (r, c) in self.positions:
            for p in range(self.d):
                E = DMatrix.zeros(alg, self.lift.Vtilde.dim, self.lift.V.dim)
                E.coeffs[p][r, c] = ONE
                out.append(E)
        return out

    def contains(self, M):
        allowed = set(self.positions)
        for c in M.coeffs:
            for r, k in zip(*np.nonzero(np.vectorize(bool, otypes=[bool])(c))):
                if (r, k) not in allowed:
                    return False
        return True

    def coordinates(self, M):
        if not self.contains(M):
            raise NotInSubalgebraError("map is not in W")
        return [M.coeffs[p][r, c] for (r, c) in self.positions for p in range(self.d)]

    def pairing(self, A, B):
        return self.lift.pair.pairing(A, B)

    def gram(self, basis=None):
        basis = self.basis() if basis is None else basis
        adj = [self.lift.pair.adjoint(A) for A in basis]
        b = len(basis)
        g = qzeros(b, b)
        for i in range(b):
            for j in range(b):
                g[i, j] = trace_k_product(adj[i], basis[j])
        return g

    def heisenberg_group(self):
        alg = self.lift.V.algebra
        return HeisenbergGroup(self.pairing, DMatrix.zeros(alg, self.lift.Vtilde.dim, self.lift.V.dim))


def build_wspace(lift):
    return WSpace(lift)


def _in_minus_one(Z, grading):
    return grading.degrees_of(Z) <= {-1} and is_lie_algebra_element(Z, grading.module)


def J_T(lift, R, Rt, check=True):
    """(R, R~) -> T R + R~ T."""
    if check:
        if not _in_minus_one(R, lift.grading):
            raise NotInSubalgebraError("R is not in g_-1")
        if not _in_minus_one(Rt, lift.grading_t):
            raise NotInSubalgebraError("R~ is not in g~_-1")
    return lift.T @ R + Rt @ lift.T


def sigma_report(lift, W=None):
    """Compare the Gram matrix of <,> on J_T of a basis of g_-1 + g~_-1 with
    block-diag(-kappa_-1, kappa~_-1); also check dimensions and bijectivity."""
    W = W or WSpace(lift)
    g1, gt1 = lift.grading.g_basis(-1), lift.grading_t.g_basis(-1)
    alg = lift.V.algebra
    zV = DMatrix.zeros(alg, lift.V.dim, lift.V.dim)
    zVt = DMatrix.zeros(alg, lift.Vtilde.dim, lift.Vtilde.dim)
    images = [J_T(lift, R, zVt, check=False) for R in g1] + [J_T(lift, zV, Rt, check=False) for Rt in gt1]
    b1 = len(g1)
    b = len(images)
    lhs = W.gram(images) if images else qzeros(0, 0)
    expected = qzeros(b, b)
    if b1:
        expected[:b1, :b1] = -kappa_minus1_gram(lift.grading, g1)
    if b - b1:
        expected[b1:, b1:] = kappa_minus1_gram(lift.grading_t, gt1)
    in_W = all(W.contains(M) for M in images)
    coords = np.array([W.coordinates(M) for M in images], dtype=object).T if images and in_W else qzeros(W.dim, b)
    bijective = in_W and coords.shape[0] == coords.shape[1] and (b == 0 or qrank(coords) == b)
    mismatches = [(i, j) for i in range(b) for j in range(b) if lhs[i, j] != expected[i, j]]
    return {
        "dim_g_minus1": b1,
        "dim_gt_minus1": b - b1,
        "dim_W": W.dim,
        "dims_match": b == W.dim,
        "images_in_W": in_W,
        "bijective": bijective,
        "gram_matches": not mismatches,
        "mismatches": mismatches[:5],
    }


def alpha_T(lift, n, nt, W=None):
    """J_T(alpha'_gamma(n), alpha_gamma~(n~)): alpha_gamma twisted by kappa' = -kappa on the V side."""
    a = alpha_gamma(n, lift.gamma, lift.grading, sign=-1)
    at = alpha_gamma(nt, lift.gamma_t, lift.grading_t, sign=1)
    return HeisenbergElement(J_T(lift, a.vector, at.vector, check=False), a.center + at.center)
