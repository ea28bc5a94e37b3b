"""
Sesquilinear Young tableaux and the modules they describe.

A row (t, A) of a tableau contributes A (x) k^t to V, where k^t carries the
irreducible sl2 action in the basis e_k = Y^k v0 and an invariant form F_t.
F_t is normalized by (v0, Y^{t-1} v0) = ((t-1)!)^2; with that choice the
natural lift k^t -> k^{t+1} is the identity on highest weight vectors and
preserves the attached form A.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np

from .dlinalg import (
    DMatrix,
    NilpotencyError,
    ShapeError,
    block_diag,
    kron_rational,
    nilpotency_index,
    qarray,
    qmatmul,
    qnullspace,
    qzeros,
    rank,
)
from .hermitian import HermitianModule
from .scalars import FIELD, ONE, ZERO, AlgebraSpec, rat
from .sl2 import Sl2Triple


class InadmissibleTableauError(ValueError):
    pass


class SizeError(ValueError):
    pass


# -- the standard irreducible sl2-module k^m --------------------------------

def sl2_rep(m):
    """(X, H, Y) on k^m in the basis e_k = Y^k v0, k = 0..m-1."""
    X, H, Y = qzeros(m, m), qzeros(m, m), qzeros(m, m)
    for k in range(m):
        H[k, k] = rat(m - 1 - 2 * k)
        if k + 1 < m:
            Y[k + 1, k] = ONE
        if k > 0:
            X[k - 1, k] = rat(k * (m - k))
    return X, H, Y


@lru_cache(maxsize=None)
def _invariant_form(m, top):
    X, H, Y = sl2_rep(m)
    # H-invariance forces F[i, j] = 0 unless the weights of e_i and e_j cancel
    unknowns = [(i, j) for i in range(m) for j in range(m) if H[i, i] + H[j, j] == 0]
    index = {p: u for u, p in enumerate(unknowns)}
    rows = []
    for A in (X, Y):
        # A^T F + F A = 0, one equation per entry
        for r in range(m):
            for c in range(m):
                eq = [ZERO] * len(unknowns)
                for k in range(m):
                    if A[k, r] and (k, c) in index:
                        eq[index[(k, c)]] += A[k, r]
                    if A[k, c] and (r, k) in index:
                        eq[index[(r, k)]] += A[k, c]
                if any(eq):
                    rows.append(eq)
    sols = qnullspace(qarray(rows)) if rows else [np.array([ONE], dtype=object)]
    if len(sols) != 1:
        raise ArithmeticError("invariant form on k^%d is not unique" % m)
    sol = sols[0]
    F = qzeros(m, m)
    for u, (i, j) in enumerate(unknowns):
        F[i, j] = sol[u]
    return F * (top / F[0, m - 1])


def invariant_form(m, top=None):
    """The sl2-invariant form on k^m with (v0, Y^{m-1} v0) = top.

    top defaults to ((m-1)!)^2, the normalization used when building modules.
    """
    if m < 1:
        raise ValueError("m must be positive")
    top = rat(factorial(m - 1) ** 2 if top is None else top)
    return _invariant_form(m, top).copy()


def form_invariance_failures(F, m):
    X, H, Y = sl2_rep(m)
    bad = []
    for name, A in (("X", X), ("H", H), ("Y", Y)):
        if any(x != 0 for x in (qmatmul(A.T, F) + qmatmul(F, A)).flat):
            bad.append(name)
    sign = 1 if m % 2 else -1
    if any(x != 0 for x in (F.T - F * sign).flat):
        bad.append("symmetry")
    return bad


# -- tableaux -------------------------------------------------------------------

@dataclass(frozen=True)
class TableauRow:
    t: int
    form: HermitianModule

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("row length must be positive")

    @property
    def mult(self):
        return self.form.dim

    @property
    def eps(self):
        return self.form.epsilon

    def hermitian_sign(self):
        """Sign of the form this row induces on A (x) k^t."""
        return (-1) ** (self.t - 1) * self.eps


class YoungTableau:
    """Rows (t_j, A_j) with t_1 > t_2 > ... and A_j an eps_j-Hermitian module."""

    def __init__(self, rows, algebra=None):
        rows = sorted(rows, key=lambda r: -r.t)
        ts = [r.t for r in rows]
        if len(set(ts)) != len(ts):
            raise ValueError("row lengths must be distinct; merge equal rows first")
        algs = {r.form.algebra for r in rows}
        if algebra is None:
            algebra = algs.pop() if len(algs) == 1 else FIELD
            algs = set()
        if algs and algs != {algebra}:
            raise ValueError("rows use different algebras")
        self.rows = tuple(rows)
        self.algebra = algebra

    @classmethod
    def from_forms(cls, pairs, algebra=None):
        """From (t, HermitianModule) pairs."""
        return cls([TableauRow(t, f) for t, f in pairs], algebra)

    @classmethod
    def diagonal(cls, spec, algebra=FIELD):
        """From (t, eps, entries) triples with diagonal attached forms."""
        return cls([TableauRow(t, HermitianModule.diagonal(ents, eps, algebra)) for t, eps, ents in spec], algebra)

    @property
    def partition(self):
        out = []
        for r in self.rows:
            out.extend([r.t] * r.mult)
        return out

    @property
    def size(self):
        return sum(r.t * r.mult for r in self.rows)

    @property
    def dim(self):
        return self.size

    @property
    def num_parts(self):
        return sum(r.mult for r in self.rows)

    @property
    def epsilon(self):
        """The common induced sign, or None if rows disagree (or there are none)."""
        signs = {r.hermitian_sign() for r in self.rows}
        return signs.pop() if len(signs) == 1 else None

    def exponent_notation(self):
        return "[" + ",".join(str(r.t) if r.mult == 1 else "%d^%d" % (r.t, r.mult) for r in self.rows) + "]"

    def __eq__(self, other):
        if not isinstance(other, YoungTableau):
            return NotImplemented
        return self.algebra == other.algebra and len(self.rows) == len(other.rows) and all(
            a.t == b.t and a.form == b.form for a, b in zip(self.rows, other.rows))

    __hash__ = None

    def __repr__(self):
        return "YoungTableau(%s, signs=%s)" % (self.exponent_notation(), [r.eps for r in self.rows])

    def to_json(self, epsilon=None):
        eps = self.epsilon if epsilon is None else epsilon
        return {
            "epsilon": eps,
            "algebra": self.algebra.to_json(),
            "rows": [{"t": r.t, "mult": r.mult, "eps": r.eps, "gram": r.form.gram.to_json()} for r in self.rows],
        }

    @classmethod
    def from_json(cls, obj):
        """Returns (tableau, epsilon)."""
        alg = AlgebraSpec.from_json(obj.get("algebra", {"kind": "field"}))
        rows = []
        for r in obj["rows"]:
            gram = DMatrix.from_json(alg, r["gram"])
            if gram.rows != int(r["mult"]):
                raise ValueError("row t=%s: mult %s does not match Gram size %d" % (r["t"], r["mult"], gram.rows))
            rows.append(TableauRow(int(r["t"]), HermitianModule(gram, int(r["eps"]))))
        eps = int(obj["epsilon"])
        if eps not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        return cls(rows, alg), eps


def is_admissible(tableau, epsilon):
    return all(r.hermitian_sign() == epsilon for r in tableau.rows)


def block_layout(tableau):
    """(row, offset) pairs: row j occupies coordinates offset .. offset + t_j * i_j - 1,
    with coordinate offset + a * t_j + k holding (basis vector a of A_j) (x) e_k."""
    out = []
    off = 0
    for r in tableau.rows:
        out.append((r, off))
        off += r.t * r.mult
    return out


def build_module(tableau, epsilon=None):
    """(V, gamma) realizing the tableau: V = sum_j A_j (x) k^{t_j}."""
    eps = tableau.epsilon if epsilon is None else epsilon
    if eps is None or not is_admissible(tableau, eps):
        raise InadmissibleTableauError("%r is not admissible for epsilon=%s" % (tableau, epsilon))
    alg = tableau.algebra
    grams, xs, hs, ys = [], [], [], []
    for r in tableau.rows:
        X, H, Y = sl2_rep(r.t)
        ident = DMatrix.identity(alg, r.mult)
        grams.append(kron_rational(r.form.gram, invariant_form(r.t)))
        xs.append(kron_rational(ident, X))
        hs.append(kron_rational(ident, H))
        ys.append(kron_rational(ident, Y))
    V = HermitianModule(block_diag(grams, alg), eps)
    gamma = Sl2Triple(V, block_diag(xs, alg), block_diag(hs, alg), block_diag(ys, alg))
    return V, gamma


def jordan_type(X):
    """Partition of Jordan block sizes of a nilpotent X, from the ranks of its powers."""
    if X.rows != X.cols:
        raise ShapeError("non-square matrix")
    if nilpotency_index(X) is None:
        raise NilpotencyError("matrix is not nilpotent")
    n = X.rows
    ranks = [n]
    P = DMatrix.identity(X.algebra, n)
    while ranks[-1] > 0:
        P = P @ X
        ranks.append(rank(P))
    # at_least[m] = number of parts >= m
    at_least = [ranks[m - 1] - ranks[m] for m in range(1, len(ranks))]
    parts = []
    for m in range(len(at_least), 0, -1):
        exactly = at_least[m - 1] - (at_least[m] if m < len(at_least) else 0)
        parts.extend([m] * exactly)
    return parts


def default_new_row_form(s, epsilon, algebra=FIELD):
    """Default epsilon-Hermitian module of dim s for the added column."""
    if epsilon == 1:
        return HermitianModule(DMatrix.identity(algebra, s), 1)
    if algebra.kind == "field":
        if s % 2:
            raise SizeError("a symplectic space of odd dimension %d does not exist" % s)
        return HermitianModule.hyperbolic(s, -1, algebra)
    if algebra.kind == "quadratic":
        unit = algebra.element(0, 1)
    else:
        unit = algebra.element(0, 1, 0, 0)
    grid = [[unit if i == j else 0 for j in range(s)] for i in range(s)]
    return HermitianModule(DMatrix.from_entries(algebra, grid), -1)


def lift_size(tableau, dim_Vtilde):
    """s = dim V~ - dim V - (number of parts)."""
    return dim_Vtilde - tableau.size - tableau.num_parts


def theta_lift_tableau(tableau, epsilon, dim_Vtilde, new_row_form=None):
    """Add a column: each row t_j -> t_j + 1 with the same form, plus a row of 1s of length s."""
    if not is_admissible(tableau, epsilon):
        raise InadmissibleTableauError("%r is not admissible for epsilon=%d" % (tableau, epsilon))
    s = lift_size(tableau, dim_Vtilde)
    if s < 0:
        raise SizeError("dim V~ = %d is below dim V + #parts = %d"
                        % (dim_Vtilde, tableau.size + tableau.num_parts))
    alg = tableau.algebra
    rows = [TableauRow(r.t + 1, r.form) for r in tableau.rows]
    if s > 0:
        form = default_new_row_form(s, -epsilon, alg) if new_row_form is None else new_row_form
        if form.dim != s or form.epsilon != -epsilon or form.algebra != alg:
            raise ValueError("new row form must be a %+d-Hermitian module of dim %d over %r" % (-epsilon, s, alg))
        # lifted rows have length >= 2, so the new row never shares a length
        rows.append(TableauRow(1, form))
    elif new_row_form is not None and new_row_form.dim != 0:
        raise ValueError("no room for a new row (s = 0)")
    return YoungTableau(rows, alg)


def tableau_equivalent(t1, t2, certificates):
    """Check a claimed equivalence: one change of basis P_j per row with P_j^H A1_j P_j = A2_j."""
    try:
        if [(r.t, r.mult, r.eps) for r in t1.rows] != [(r.t, r.mult, r.eps) for r in t2.rows]:
            return False
        if len(certificates) != len(t1.rows):
            return False
        for r1, r2, P in zip(t1.rows, t2.rows, certificates):
            if P.shape != (r1.mult, r1.mult) or rank(P) != r1.mult:
                return False
            if not P.ct() @ r1.form.gram @ P == r2.form.gram:
                return False
        return True
    except (ValueError, TypeError):
        return False


def tableau_of_triple(triple, grading=None):
    """Read a tableau back from an sl2-triple, inverting build_module's conventions."""
    from .sl2 import highest_weight_forms

    rows = []
    for t, (P, gram) in highest_weight_forms(triple, grading).items():
        eps = triple.module.epsilon * (-1) ** (t - 1)
        rows.append(TableauRow(t, HermitianModule(gram * (-1) ** (t - 1), eps)))
    return YoungTableau(rows, triple.module.algebra)


def dominates(p, q):
    """True if partition p dominates q (same size assumed, padded with zeros)."""
    n = max(len(p), len(q))
    p = list(p) + [0] * (n - len(p))
    q = list(q) + [0] * (n - len(q))
    sp = sq = 0
    for a, b in zip(p, q):
        sp += a
        sq += b
        if sp < sq:
            return False
    return True
