"""
Gradings attached to an sl2-triple {X, H, Y} in g(V).

Everything here works in a basis where H is diagonal; `grade` produces such a
basis (for modules built from tableaux it is the given one).
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .dlinalg import (
    DMatrix,
    bracket,
    hstack,
    inverse,
    kernel_basis,
    nilpotent_exp,
    nilpotent_log,
    qnullspace,
    rank,
    stack_vecs,
    trace_k_product,
)
from .hermitian import HermitianModule, is_lie_algebra_element, kappa, lie_algebra_basis
from .scalars import ONE, ZERO


class InvalidTripleError(ValueError):
    pass


class NotInSubalgebraError(ValueError):
    pass


class Sl2Triple:
    """gamma = {X, H, Y} in g(V) with [H,X] = 2X, [H,Y] = -2Y, [X,Y] = H."""

    def __init__(self, module, X, H, Y, check=True):
        self.module = module
        self.X = X
        self.H = H
        self.Y = Y
        if check:
            failures = self.failed_relations()
            if failures:
                raise InvalidTripleError("relations fail: " + ", ".join(failures))

    def failed_relations(self):
        X, H, Y = self.X, self.H, self.Y
        out = []
        if not bracket(H, X) == X * 2:
            out.append("[H,X]=2X")
        if not bracket(H, Y) == Y * -2:
            out.append("[H,Y]=-2Y")
        if not bracket(X, Y) == H:
            out.append("[X,Y]=H")
        for name, m in (("X", X), ("H", H), ("Y", Y)):
            if not is_lie_algebra_element(m, self.module):
                out.append("%s*=-%s" % (name, name))
        return out

    @classmethod
    def zero(cls, module):
        z = DMatrix.zeros(module.algebra, module.dim, module.dim)
        return cls(module, z, z, z, check=False)

    def to_json(self):
        return {"X": self.X.to_json(), "H": self.H.to_json(), "Y": self.Y.to_json()}


@dataclass(frozen=True)
class HeisenbergElement:
    vector: DMatrix
    center: object


class HeisenbergGroup:
    """S x Q with (v, s)(w, t) = (v + w, s + t + omega(v, w) / 2)."""

    def __init__(self, omega, zero_vector):
        self.omega = omega
        self.zero_vector = zero_vector

    def identity(self):
        return HeisenbergElement(self.zero_vector, ZERO)

    def mul(self, x, y):
        return HeisenbergElement(x.vector + y.vector, x.center + y.center + self.omega(x.vector, y.vector) / 2)

    def inv(self, x):
        return HeisenbergElement(-x.vector, -x.center)


def _weights_if_diagonal(h):
    if not h.is_rational():
        return None
    m = h.coeffs[0]
    n = m.shape[0]
    for i in range(n):
        for j in range(n):
            if i != j and m[i, j] != 0:
                return None
    ws = []
    for i in range(n):
        x = m[i, i]
        if x.denominator != 1:
            raise InvalidTripleError("H has a non-integer eigenvalue %s" % x)
        ws.append(int(x))
    return ws


class Grading:
    """Eigenspace data of H on V and of ad(H) on g, in a basis diagonalizing H."""

    def __init__(self, triple, weights, basis_change=None):
        self.triple = triple
        self.module = triple.module
        self.weights = list(weights)
        self.basis_change = basis_change
        self._g_cache = {}

    @property
    def algebra(self):
        return self.module.algebra

    @property
    def dim(self):
        return self.module.dim

    @cached_property
    def V_weights(self):
        out = {}
        for idx, w in enumerate(self.weights):
            out.setdefault(w, []).append(idx)
        return dict(sorted(out.items()))

    def indices(self, w):
        return self.V_weights.get(w, [])

    def V_basis(self, w):
        """Basis of V_w as columns of the identity."""
        n = self.dim
        return [DMatrix.identity(self.algebra, n).sub(range(n), [i]) for i in self.indices(w)]

    def degree_support(self, i):
        ws = self.weights
        n = len(ws)
        return [(r, c) for r in range(n) for c in range(n) if ws[r] - ws[c] == i]

    @cached_property
    def g_degrees(self):
        ws = set(self.weights)
        return sorted({a - b for a in ws for b in ws})

    def g_basis(self, i):
        if i not in self._g_cache:
            supp = self.degree_support(i)
            self._g_cache[i] = lie_algebra_basis(self.module, supp) if supp else []
        return self._g_cache[i]

    @property
    def g_weights(self):
        return {i: self.g_basis(i) for i in self.g_degrees if self.g_basis(i)}

    def basis_for(self, pred):
        out = []
        for i in self.g_degrees:
            if pred(i):
                out.extend(self.g_basis(i))
        return out

    @property
    def u_basis(self):
        return self.basis_for(lambda i: i <= -2)

    @property
    def n_basis(self):
        return self.basis_for(lambda i: i <= -1)

    @property
    def p_basis(self):
        return self.basis_for(lambda i: i <= 0)

    @property
    def m_basis(self):
        return self.g_basis(0)

    def degree_component(self, z, i):
        ws = self.weights
        out = z.copy()
        n = len(ws)
        for r in range(n):
            for c in range(n):
                if ws[r] - ws[c] != i:
                    for p in range(len(out.coeffs)):
                        out.coeffs[p][r, c] = ZERO
        return out

    def degrees_of(self, z):
        ws = self.weights
        found = set()
        for c in z.coeffs:
            rr, cc = np.nonzero(np.vectorize(bool, otypes=[bool])(c)) if c.size else ((), ())
            for r, k in zip(rr, cc):
                found.add(ws[r] - ws[k])
        return found

    def in_n(self, z):
        return all(i <= -1 for i in self.degrees_of(z)) and is_lie_algebra_element(z, self.module)

    def in_u(self, z):
        return all(i <= -2 for i in self.degrees_of(z)) and is_lie_algebra_element(z, self.module)

    def in_m(self, z):
        return all(i == 0 for i in self.degrees_of(z)) and is_lie_algebra_element(z, self.module)


def grade(triple):
    """Grading of V and g by the eigenvalues of H (diagonalizing H if needed)."""
    ws = _weights_if_diagonal(triple.H)
    if ws is not None:
        return Grading(triple, ws)
    module = triple.module
    n = module.dim
    alg = module.algebra
    cols, weights = [], []
    for lam in range(-2 * n, 2 * n + 1):
        ker = kernel_basis(triple.H - DMatrix.identity(alg, n) * lam)
        cols.extend(ker)
        weights.extend([lam] * len(ker))
    if len(cols) != n:
        raise InvalidTripleError("H is not diagonalizable with integer eigenvalues")
    P = hstack(cols)
    Pinv = inverse(P)
    new_module = HermitianModule(P.ct() @ module.gram @ P, module.epsilon)
    new_triple = Sl2Triple(new_module, Pinv @ triple.X @ P, Pinv @ triple.H @ P, Pinv @ triple.Y @ P)
    return Grading(new_triple, weights, basis_change=P)


# -- forms B_i on the weight spaces ------------------------------------------

def _power_block(grading, k, src, dst):
    X = grading.triple.X
    return (X ** k).sub(grading.indices(dst), grading.indices(src))


def weight_forms(triple, grading=None):
    """i -> Gram matrix of B_i(v, w) = B(X^{-i} v, w) on V_i (in the V_i coordinates)."""
    grading = grading or grade(triple)
    G = grading.module.gram
    out = {}
    for i in grading.V_weights:
        Ii = grading.indices(i)
        Im = grading.indices(-i)
        if len(Ii) != len(Im):
            raise InvalidTripleError("V_%d and V_%d have different dimensions" % (i, -i))
        if i == 0:
            out[i] = G.sub(Ii, Ii)
            continue
        if i > 0:
            block = _power_block(grading, i, -i, i)
            if rank(block) != len(Ii):
                raise InvalidTripleError("X^%d : V_%d -> V_%d is not invertible" % (i, -i, i))
            M = inverse(block)
        else:
            M = _power_block(grading, -i, i, -i)
        out[i] = M.ct() @ G.sub(Im, Ii)
    return out


def weight_form_value(forms, grading, i, v, w):
    """B_i on full-length column vectors (or matrices of columns) lying in V_i."""
    Ii = grading.indices(i)
    return v.sub(Ii, range(v.cols)).ct() @ forms[i] @ w.sub(Ii, range(w.cols))


def isotypic_pieces(grading):
    """t -> {i: n x m matrix whose columns span V^{gamma,t}_i}."""
    X, Y = grading.triple.X, grading.triple.Y
    n = grading.dim
    alg = grading.algebra
    out = {}
    for w in sorted(grading.V_weights, reverse=True):
        if w < 0:
            continue
        Iw = grading.indices(w)
        Iup = grading.indices(w + 2)
        if Iup:
            ker = kernel_basis(X.sub(Iup, Iw))
        else:
            ker = [DMatrix.identity(alg, len(Iw)).sub(range(len(Iw)), [k]) for k in range(len(Iw))]
        if not ker:
            continue
        prim = DMatrix.zeros(alg, n, len(ker))
        local = hstack(ker)
        for p in range(alg.dim):
            prim.coeffs[p][Iw, :] = local.coeffs[p]
        t = w + 1
        pieces = {}
        cur = prim
        for k in range(t):
            pieces[w - 2 * k] = cur
            cur = Y @ cur
        out[t] = pieces
    return dict(sorted(out.items(), reverse=True))


def sign_identity_failures(triple, grading=None):
    """Blocks where B_{i+2}(Xv, Xw) = -B_i(v, w) fails; empty when it holds everywhere."""
    grading = grading or grade(triple)
    forms = weight_forms(triple, grading)
    X = grading.triple.X
    bad = []
    for t, pieces in isotypic_pieces(grading).items():
        for i in range(-t + 1, t - 2, 2):
            P = pieces[i]
            lhs = weight_form_value(forms, grading, i + 2, X @ P, X @ P)
            rhs = weight_form_value(forms, grading, i, P, P)
            if not lhs == -rhs:
                bad.append((t, i))
    return bad


def highest_weight_forms(triple, grading=None):
    """t -> (basis of V^{gamma,t}_{t-1}, Gram of B_{t-1} on it)."""
    grading = grading or grade(triple)
    forms = weight_forms(triple, grading)
    out = {}
    for t, pieces in isotypic_pieces(grading).items():
        P = pieces[t - 1]
        out[t] = (P, weight_form_value(forms, grading, t - 1, P, P))
    return out


# -- kappa_{-1}, characters, Heisenberg map ----------------------------------

def kappa_minus1(triple, grading, S, T, check=True):
    """kappa(X, [S, T]) on g_{-1}; also equals kappa([X, S], T)."""
    if check:
        for Z in (S, T):
            if not grading.degrees_of(Z) <= {-1} or not is_lie_algebra_element(Z, grading.module):
                raise NotInSubalgebraError("argument is not in g_-1")
    return kappa(grading.triple.X, bracket(S, T), grading.module)


def kappa_minus1_alt(triple, grading, S, T):
    return kappa(bracket(grading.triple.X, S), T, grading.module)


def kappa_minus1_gram(grading, basis=None, sign=1):
    """Gram matrix of sign * kappa_{-1} on a basis of g_{-1}."""
    basis = grading.g_basis(-1) if basis is None else basis
    X = grading.triple.X
    b = len(basis)
    gram = np.empty((b, b), dtype=object)
    gram.fill(ZERO)
    # kappa(X, [S, T]) = -Tr(X [S, T]) / 2 = -Tr([X, S] T) / 2 on g
    pre = [bracket(X, S) for S in basis]
    for a in range(b):
        for c in range(b):
            gram[a, c] = -trace_k_product(pre[a], basis[c]) * sign / 2
    return gram


def character_functional(grading):
    """Z -> kappa(X, Z) on u."""
    X = grading.triple.X
    V = grading.module

    def chi(Z):
        if not grading.in_u(Z):
            raise NotInSubalgebraError("argument is not in u")
        return kappa(X, Z, V)

    return chi


def heisenberg_group(grading, sign=1):
    alg = grading.algebra
    n = grading.dim

    def omega(S, T):
        if S.is_zero() or T.is_zero():
            return ZERO
        return sign * kappa(grading.triple.X, bracket(S, T), grading.module)

    return HeisenbergGroup(omega, DMatrix.zeros(alg, n, n))


def heisenberg_coordinates(n_elt, grading):
    """The unique (T, Z) in g_{-1} x u with n_elt = exp(T) exp(Z)."""
    L = nilpotent_log(n_elt)
    if not grading.in_n(L):
        raise NotInSubalgebraError("element is not in N = exp(n)")
    T = grading.degree_component(L, -1)
    Z = nilpotent_log(nilpotent_exp(-T) @ n_elt)
    if not grading.in_u(Z):
        raise NotInSubalgebraError("remainder is not in u")
    return T, Z


def alpha_gamma(n_elt, triple, grading, sign=1):
    """exp(T) exp(Z) -> (T, sign * kappa(X, Z)) in the Heisenberg group of (g_{-1}, sign * kappa_{-1})."""
    T, Z = heisenberg_coordinates(n_elt, grading)
    return HeisenbergElement(T, sign * kappa(grading.triple.X, Z, grading.module))


def lagrangian_split(gram):
    """Greedy symplectic basis for an antisymmetric nondegenerate rational Gram
    matrix. Returns (E, F): lists of coordinate vectors with omega(E_a, F_b) =
    delta_ab and E, F isotropic."""
    b = gram.shape[0]
    vecs = [np.array([ONE if k == a else ZERO for k in range(b)], dtype=object) for a in range(b)]

    def om(x, y):
        return x.dot(gram.dot(y)) if b else ZERO

    E, F = [], []
    rest = vecs
    while rest:
        e = rest[0]
        partner = None
        for k in range(1, len(rest)):
            if om(e, rest[k]) != 0:
                partner = k
                break
        if partner is None:
            raise ValueError("form is degenerate")
        f = rest[partner] / om(e, rest[partner])
        E.append(e)
        F.append(f)
        new_rest = []
        for k, x in enumerate(rest):
            if k in (0, partner):
                continue
            # project off span(e, f)
            x = x - e * om(x, f) + f * om(x, e)
            new_rest.append(x)
        rest = new_rest
    return E, F


# -- centralizer dimension report ---------------------------------------------

def centralizer_dim(grading):
    """dim_Q of m_X = {Z in g_0 : [Z, X] = 0}."""
    basis = grading.m_basis
    if not basis:
        return 0
    X = grading.triple.X
    m = stack_vecs([bracket(Z, X) for Z in basis])
    return len(qnullspace(m))


def mx_dimension_report(triple, grading=None, tableau=None):
    """Compare dim m_X with the sum of dim g(V_{t-1}^{gamma,t}) over isotypic pieces."""
    grading = grading or grade(triple)
    lhs = centralizer_dim(grading)
    pieces = []
    if tableau is not None:
        for row in tableau.rows:
            pieces.append({"t": row.t, "dim_k": len(lie_algebra_basis(row.form))})
    else:
        for t, (P, gram) in highest_weight_forms(triple, grading).items():
            eps = grading.module.epsilon * (-1) ** (t - 1)
            pieces.append({"t": t, "dim_k": len(lie_algebra_basis(HermitianModule(gram, eps)))})
    rhs = sum(p["dim_k"] for p in pieces)
    return {
        "dim_m_X": lhs,
        "sum_isometry_algebras": rhs,
        "pieces": pieces,
        "equal": lhs == rhs,
    }


def grading_report(grading):
    return {
        "V_dims": {str(w): len(ix) for w, ix in grading.V_weights.items()},
        "g_dims": {str(i): len(b) for i, b in grading.g_weights.items()},
        "dim_u": len(grading.u_basis),
        "dim_n": len(grading.n_basis),
    }
