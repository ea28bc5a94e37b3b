"""
epsilon-Hermitian modules (V, B), adjoints, the Lie algebra g(V) and its
invariant form kappa(T, S) = Tr(T* S) / 2.

B(v, w) = v^H G w for column vectors, where G is the Gram matrix and ^H is the
conjugate transpose; so B is conjugate-linear in the first slot.
"""

from functools import cached_property

import numpy as np

from .dlinalg import (
    DMatrix,
    ShapeError,
    block_diag,
    inverse,
    qnullspace,
    rank,
    trace_k_product,
    unvec_k,
    vec_k,
)
from .scalars import FIELD, AlgebraSpec, ONE, ZERO, rat


class DegenerateFormError(ValueError):
    pass


class HermitianModule:
    """A right D-module D^n with a nondegenerate epsilon-Hermitian form."""

    def __init__(self, gram, epsilon):
        if epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        if gram.rows != gram.cols:
            raise ShapeError("Gram matrix must be square")
        if not gram.ct() == gram * epsilon:
            raise ValueError("Gram matrix is not %+d-Hermitian" % epsilon)
        if rank(gram) != gram.rows:
            raise DegenerateFormError("form is degenerate")
        self.gram = gram
        self.epsilon = epsilon

    @property
    def algebra(self):
        return self.gram.algebra

    @property
    def dim(self):
        return self.gram.rows

    @property
    def dim_k(self):
        return self.gram.rows * self.algebra.dim

    @cached_property
    def gram_inv(self):
        return inverse(self.gram)

    def form(self, v, w):
        """B(v, w) for column vectors (or matrices, giving the matrix of pairings)."""
        return v.ct() @ self.gram @ w

    def identity(self):
        return DMatrix.identity(self.algebra, self.dim)

    @classmethod
    def diagonal(cls, entries, epsilon=1, algebra=FIELD):
        entries = list(entries)
        n = len(entries)
        grid = [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls(DMatrix.from_entries(algebra, grid), epsilon)

    @classmethod
    def hyperbolic(cls, n, epsilon=-1, algebra=FIELD):
        """Anti-diagonal form with B(e_i, e_{n-1-i}) = 1 for i < n/2 (and epsilon below)."""
        if n % 2:
            raise ValueError("hyperbolic module needs even dimension")
        grid = [[0] * n for _ in range(n)]
        for i in range(n):
            grid[i][n - 1 - i] = 1 if i < n // 2 else epsilon
        return cls(DMatrix.from_entries(algebra, grid), epsilon)

    @classmethod
    def direct_sum(cls, modules):
        modules = list(modules)
        eps = {m.epsilon for m in modules}
        if len(eps) != 1:
            raise ValueError("summands have different signs")
        return cls(block_diag([m.gram for m in modules]), eps.pop())

    def __eq__(self, other):
        if not isinstance(other, HermitianModule):
            return NotImplemented
        return self.epsilon == other.epsilon and self.gram == other.gram

    __hash__ = None

    def to_json(self):
        return {
            "dim": self.dim,
            "epsilon": self.epsilon,
            "algebra": self.algebra.to_json(),
            "gram": self.gram.to_json(),
        }

    @classmethod
    def from_json(cls, obj, algebra=None):
        alg = AlgebraSpec.from_json(obj["algebra"]) if "algebra" in obj else (algebra or FIELD)
        gram = DMatrix.from_json(alg, obj["gram"])
        if "dim" in obj and obj["dim"] != gram.rows:
            raise ValueError("dim %s does not match Gram size %d" % (obj["dim"], gram.rows))
        return cls(gram, int(obj["epsilon"]))

    def __repr__(self):
        return "HermitianModule(dim=%d, epsilon=%+d, algebra=%r)" % (self.dim, self.epsilon, self.algebra)


def adjoint(t, source, target):
    """T* : target -> source with B_target(T v, w) = B_source(v, T* w)."""
    if t.cols != source.dim or t.rows != target.dim:
        raise ShapeError("map of shape %s is not %d -> %d" % (t.shape, source.dim, target.dim))
    return source.gram_inv @ t.ct() @ target.gram


def is_lie_algebra_element(t, v):
    if t.shape != (v.dim, v.dim):
        return False
    return adjoint(t, v, v) == -t


def is_isometry(g, v):
    return g.ct() @ v.gram @ g == v.gram


def kappa(t, s, v):
    """The invariant form Tr(T* S) / 2 on g(V), trace taken over Q."""
    return trace_k_product(adjoint(t, v, v), s) / 2


def lie_algebra_basis(v, support=None):
    """A Q-basis of {T : T* = -T}, optionally restricted to matrices supported on
    the given set of (row, col) positions.

    The equations T + T* = 0 are split into independent blocks before solving,
    which keeps the work small when the Gram matrix is sparse.
    """
    n = v.dim
    alg = v.algebra
    d = alg.dim
    positions = [(r, c) for r in range(n) for c in range(n)] if support is None else sorted(set(support))
    if not positions:
        return []
    ginv = v.gram_inv
    g = v.gram
    basis_elems = alg.basis()
    # column of the linear map T -> T + T* for each elementary unknown
    columns = []
    for (r, c) in positions:
        for p in range(d):
            e = DMatrix.zeros(alg, n, n)
            e.coeffs[p][r, c] = ONE
            scal = DMatrix.from_entries(alg, [[basis_elems[p].conj()]])
            estar = ginv.sub(range(n), [c]) @ scal @ g.sub([r], range(n))
            col = vec_k(e + estar)
            columns.append({i: x for i, x in enumerate(col) if x != 0})
    # union-find over unknowns linked through shared equations
    parent = list(range(len(columns)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner = {}
    for u, col in enumerate(columns):
        for i in col:
            if i in owner:
                ru, rv = find(u), find(owner[i])
                if ru != rv:
                    parent[ru] = rv
            else:
                owner[i] = u
    comps = {}
    for u in range(len(columns)):
        comps.setdefault(find(u), []).append(u)
    out = []
    for comp in sorted(comps.values()):
        eqs = sorted({i for u in comp for i in columns[u]})
        if not eqs:
            sols = [np.array([ONE if w == u else ZERO for w in comp], dtype=object) for u in comp]
        else:
            eq_index = {i: k for k, i in enumerate(eqs)}
            m = np.empty((len(eqs), len(comp)), dtype=object)
            m.fill(ZERO)
            for k, u in enumerate(comp):
                for i, x in columns[u].items():
                    m[eq_index[i], k] = x
            sols = qnullspace(m)
        for sol in sols:
            t = DMatrix.zeros(alg, n, n)
            for k, u in enumerate(comp):
                if sol[k] != 0:
                    (r, c), p = positions[u // d], u % d
                    t.coeffs[p][r, c] += sol[k]
            out.append(t)
    return out


def lie_algebra_dim(v):
    return len(lie_algebra_basis(v))


def coordinates(t, basis):
    """Q-coordinates of t in the given basis (raises if t is not in the span)."""
    from .dlinalg import qsolve, stack_vecs
    m = stack_vecs(basis, t.rows * t.cols * t.algebra.dim)
    x = qsolve(m, vec_k(t).reshape(-1, 1))
    return [x[i, 0] for i in range(len(basis))]


def combination(coeffs, basis, algebra, n):
    t = DMatrix.zeros(algebra, n, n)
    for c, b in zip(coeffs, basis):
        c = rat(c)
        if c:
            t = t + b * c
    return t


__all__ = [
    "HermitianModule",
    "DegenerateFormError",
    "adjoint",
    "is_lie_algebra_element",
    "is_isometry",
    "kappa",
    "lie_algebra_basis",
    "lie_algebra_dim",
    "coordinates",
    "combination",
    "unvec_k",
]
