"""
Exact linear algebra for right D-module maps.

A DMatrix acts on column vectors by left multiplication, with scalars of D
acting on the right, so it is a morphism of right D-modules.  Internally a
DMatrix is stored as its coordinate matrices: A = sum_p A_p e_p with each A_p
a rational matrix.  Rank, kernels and inverses go through the Q-linear
realization, which sidesteps pivoting over a noncommutative ring.
"""

from functools import reduce

import numpy as np

from .scalars import FIELD, ONE, ZERO, DElement, SpecMismatchError, rat, rat_str


class ShapeError(ValueError):
    pass


class NilpotencyError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


# -- rational matrices (numpy object arrays of mpq) -------------------------

def qzeros(m, n):
    out = np.empty((m, n), dtype=object)
    out.fill(ZERO)
    return out


def qeye(n):
    out = qzeros(n, n)
    for i in range(n):
        out[i, i] = ONE
    return out


def qarray(rows):
    rows = [list(r) for r in rows]
    m = len(rows)
    n = len(rows[0]) if m else 0
    out = qzeros(m, n)
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ShapeError("ragged matrix")
        for j, x in enumerate(r):
            out[i, j] = rat(x)
    return out


def qmatmul(a, b):
    if a.shape[1] != b.shape[0]:
        raise ShapeError("cannot multiply %s by %s" % (a.shape, b.shape))
    if a.shape[1] == 0:
        return qzeros(a.shape[0], b.shape[1])
    return a.dot(b)


def rref(m):
    """Reduced row echelon form. Returns (R, pivot columns)."""
    r = np.array(m, dtype=object, copy=True)
    nrows, ncols = r.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        piv = None
        for i in range(row, nrows):
            if r[i, col] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        p = r[row, col]
        if p != 1:
            r[row, col:] = r[row, col:] / p
        for i in range(nrows):
            if i != row:
                f = r[i, col]
                if f != 0:
                    r[i, col:] = r[i, col:] - f * r[row, col:]
        pivots.append(col)
        row += 1
    return r, pivots


def qrank(m):
    if m.size == 0:
        return 0
    return len(rref(m)[1])


def qnullspace(m):
    """Basis of {x : m x = 0}, one vector per free column."""
    nrows, ncols = m.shape
    if nrows == 0:
        return [qeye(ncols)[:, j] for j in range(ncols)]
    r, pivots = rref(m)
    free = [j for j in range(ncols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = np.empty(ncols, dtype=object)
        v.fill(ZERO)
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(v)
    return basis


def qinverse(m):
    n = m.shape[0]
    if m.shape != (n, n):
        raise ShapeError("inverse of a non-square matrix")
    if n == 0:
        return qzeros(0, 0)
    aug = np.concatenate([m, qeye(n)], axis=1)
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return r[:, n:]


def qsolve(a, b):
    """Some x with a x = b, or raise SingularMatrixError if the system is inconsistent."""
    m, n = a.shape
    aug = np.concatenate([a, b], axis=1)
    r, pivots = rref(aug)
    if any(p >= n for p in pivots):
        raise SingularMatrixError("inconsistent linear system")
    x = qzeros(n, b.shape[1])
    for i, p in enumerate(pivots):
        x[p, :] = r[i, n:]
    return x


def qis_zero(m):
    return all(x == 0 for x in m.flat)


def qtrace(m):
    return sum((m[i, i] for i in range(m.shape[0])), ZERO)


# -- matrices over D --------------------------------------------------------

class DMatrix:
    """A rows x cols matrix over a division algebra, as a right D-module map."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != algebra.dim:
            raise ValueError("need %d coordinate matrices" % algebra.dim)
        shape = coeffs[0].shape
        if any(c.shape != shape for c in coeffs):
            raise ShapeError("coordinate matrices disagree in shape")
        self.algebra = algebra
        self.coeffs = coeffs

    # construction

    @classmethod
    def zeros(cls, algebra, rows, cols):
        return cls(algebra, [qzeros(rows, cols) for _ in range(algebra.dim)])

    @classmethod
    def identity(cls, algebra, n):
        return cls.from_rational(algebra, qeye(n))

    @classmethod
    def from_rational(cls, algebra, m):
        m = m if isinstance(m, np.ndarray) else qarray(m)
        if m.ndim != 2:
            raise ShapeError("expected a 2d matrix")
        rest = [qzeros(*m.shape) for _ in range(algebra.dim - 1)]
        return cls(algebra, [np.array(m, dtype=object)] + rest)

    @classmethod
    def from_entries(cls, algebra, grid):
        """Build from a grid whose entries are DElements, rationals or coordinate tuples."""
        grid = [list(r) for r in grid]
        m = len(grid)
        n = len(grid[0]) if m else 0
        coeffs = [qzeros(m, n) for _ in range(algebra.dim)]
        for i, row in enumerate(grid):
            if len(row) != n:
                raise ShapeError("ragged matrix")
            for j, x in enumerate(row):
                if isinstance(x, DElement):
                    if x.spec != algebra:
                        raise SpecMismatchError("entry from %r" % (x.spec,))
                    c = x.coords
                elif isinstance(x, (tuple, list)):
                    c = algebra.element(*x).coords
                else:
                    c = algebra.element(x).coords
                for p in range(algebra.dim):
                    coeffs[p][i, j] = c[p]
        return cls(algebra, coeffs)

    @classmethod
    def column(cls, algebra, entries):
        return cls.from_entries(algebra, [[x] for x in entries])

    @classmethod
    def from_realization(cls, algebra, m):
        """Inverse of realize() on matrices that commute with the right D-action."""
        d = algebra.dim
        rows, cols = m.shape[0] // d, m.shape[1] // d
        coeffs = [qzeros(rows, cols) for _ in range(d)]
        for p in range(d):
            coeffs[p][:, :] = m[p::d, 0::d]
        out = cls(algebra, coeffs)
        return out

    # shape and access

    @property
    def shape(self):
        return self.coeffs[0].shape

    @property
    def rows(self):
        return self.coeffs[0].shape[0]

    @property
    def cols(self):
        return self.coeffs[0].shape[1]

    def entry(self, i, j):
        return DElement(self.algebra, tuple(c[i, j] for c in self.coeffs))

    def __getitem__(self, key):
        i, j = key
        if isinstance(i, int) and isinstance(j, int):
            return self.entry(i, j)
        return self.sub(i, j)

    def sub(self, rows, cols):
        rows = _as_index(rows, self.rows)
        cols = _as_index(cols, self.cols)
        return DMatrix(self.algebra, [c[np.ix_(rows, cols)] for c in self.coeffs])

    def entries(self):
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    def copy(self):
        return DMatrix(self.algebra, [c.copy() for c in self.coeffs])

    # arithmetic

    def _same(self, other):
        if not isinstance(other, DMatrix):
            raise TypeError("expected a DMatrix")
        if other.algebra != self.algebra:
            raise SpecMismatchError("%r vs %r" % (self.algebra, other.algebra))

    def __add__(self, other):
        self._same(other)
        if other.shape != self.shape:
            raise ShapeError("cannot add %s and %s" % (self.shape, other.shape))
        return DMatrix(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._same(other)
        if other.shape != self.shape:
            raise ShapeError("cannot subtract %s and %s" % (self.shape, other.shape))
        return DMatrix(self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return DMatrix(self.algebra, [-a for a in self.coeffs])

    def __mul__(self, x):
        # rational scalars are central
        x = rat(x)
        return DMatrix(self.algebra, [a * x for a in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, x):
        x = rat(x)
        return DMatrix(self.algebra, [a / x for a in self.coeffs])

    def __matmul__(self, other):
        return matmul(self, other)

    def left_scale(self, x):
        """x * A entrywise (x on the left)."""
        return DMatrix.from_entries(self.algebra, [[x * e for e in row] for row in self.entries()])

    def right_scale(self, x):
        """A * x entrywise (x on the right), i.e. A composed with right multiplication."""
        return DMatrix.from_entries(self.algebra, [[e * x for e in row] for row in self.entries()])

    def ct(self):
        """Conjugate transpose."""
        signs = self.algebra.conj_signs
        return DMatrix(self.algebra, [a.T * s if s == 1 else -a.T for a, s in zip(self.coeffs, signs)])

    def __pow__(self, k):
        if self.rows != self.cols:
            raise ShapeError("power of a non-square matrix")
        out = DMatrix.identity(self.algebra, self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def is_zero(self):
        return all(qis_zero(c) for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, DMatrix):
            return NotImplemented
        if other.algebra != self.algebra or other.shape != self.shape:
            return False
        return all(np.array_equal(a, b) for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def is_rational(self):
        return all(qis_zero(c) for c in self.coeffs[1:])

    def realize(self):
        return realize_k(self)

    def to_json(self):
        return [[e.to_json() for e in row] for row in self.entries()]

    @classmethod
    def from_json(cls, algebra, obj):
        return cls.from_entries(algebra, obj)

    def __repr__(self):
        rows = []
        for row in self.entries():
            rows.append("[" + ", ".join(_short(e) for e in row) + "]")
        return "DMatrix(%r, [%s])" % (self.algebra, ", ".join(rows))


def _short(e):
    if e.spec.dim == 1:
        return rat_str(e.coords[0])
    return "(" + ",".join(rat_str(c) for c in e.coords) + ")"


def _as_index(idx, n):
    if isinstance(idx, slice):
        return list(range(n))[idx]
    return list(idx)


def matmul(a, b):
    """Exact product; entries of a multiply entries of b from the left."""
    a._same(b)
    if a.cols != b.rows:
        raise ShapeError("cannot multiply %s by %s" % (a.shape, b.shape))
    alg = a.algebra
    d = alg.dim
    if d == 1:
        return DMatrix(alg, [qmatmul(a.coeffs[0], b.coeffs[0])])
    out = [qzeros(a.rows, b.cols) for _ in range(d)]
    for p in range(d):
        ap = a.coeffs[p]
        if qis_zero(ap):
            continue
        for q in range(d):
            bq = b.coeffs[q]
            if qis_zero(bq):
                continue
            c, r = alg.table[p][q]
            prod = qmatmul(ap, bq)
            out[r] = out[r] + (prod if c == 1 else prod * c)
    return DMatrix(alg, out)


def realize_k(a):
    """The Q-linear map underlying a, as a (rows*d) x (cols*d) rational matrix."""
    alg = a.algebra
    d = alg.dim
    if d == 1:
        return a.coeffs[0].copy()
    out = qzeros(a.rows * d, a.cols * d)
    for p in range(d):
        lp = np.array(alg.basis_left_mult[p], dtype=object)
        out = out + np.kron(a.coeffs[p], lp)
    return out


def block_diag(blocks, algebra=None):
    blocks = list(blocks)
    if not blocks:
        return DMatrix.zeros(algebra or FIELD, 0, 0)
    alg = blocks[0].algebra
    r = sum(b.rows for b in blocks)
    c = sum(b.cols for b in blocks)
    out = [qzeros(r, c) for _ in range(alg.dim)]
    i = j = 0
    for b in blocks:
        for p in range(alg.dim):
            out[p][i:i + b.rows, j:j + b.cols] = b.coeffs[p]
        i += b.rows
        j += b.cols
    return DMatrix(alg, out)


def hstack(mats):
    alg = mats[0].algebra
    return DMatrix(alg, [np.concatenate([m.coeffs[p] for m in mats], axis=1) for p in range(alg.dim)])


def vstack(mats):
    alg = mats[0].algebra
    return DMatrix(alg, [np.concatenate([m.coeffs[p] for m in mats], axis=0) for p in range(alg.dim)])


def kron_rational(a, r):
    """a (x) r for a rational matrix r: block (i, j) is a[i, j] * r."""
    r = r if isinstance(r, np.ndarray) else qarray(r)
    return DMatrix(a.algebra, [np.kron(c, r) for c in a.coeffs])


def rank(a):
    """Rank of a as a right D-module map."""
    d = a.algebra.dim
    rk = qrank(realize_k(a))
    assert rk % d == 0
    return rk // d


def kernel_basis(a):
    """A right-D-basis of the kernel, as a list of cols x 1 DMatrices."""
    alg = a.algebra
    d = alg.dim
    kvecs = qnullspace(realize_k(a))
    chosen = []
    span = qzeros(a.cols * d, 0)
    for v in kvecs:
        col = DMatrix.from_realization(alg, _as_column_realization(alg, v))
        if qrank(np.concatenate([span, v.reshape(-1, 1)], axis=1)) == span.shape[1]:
            continue
        chosen.append(col)
        span = np.concatenate([span, realize_k(col)], axis=1)
    return chosen


def _as_column_realization(alg, v):
    """The realization of the D-column whose coordinates are v (first realized column)."""
    d = alg.dim
    n = len(v) // d
    coeffs = [qzeros(n, 1) for _ in range(d)]
    for r in range(n):
        for p in range(d):
            coeffs[p][r, 0] = v[r * d + p]
    return realize_k(DMatrix(alg, coeffs))


def inverse(a):
    if a.rows != a.cols:
        raise ShapeError("inverse of a non-square matrix")
    if a.algebra.dim == 1:
        return DMatrix(a.algebra, [qinverse(a.coeffs[0])])
    return DMatrix.from_realization(a.algebra, qinverse(realize_k(a)))


def solve_left(a, b):
    """The unique x with a @ x == b, for a injective; raises if no solution."""
    if a.algebra.dim == 1:
        x = qsolve(a.coeffs[0], b.coeffs[0])
        out = DMatrix(a.algebra, [x])
    else:
        x = qsolve(realize_k(a), realize_k(b))
        out = DMatrix.from_realization(a.algebra, x)
    if not a @ out == b:
        raise SingularMatrixError("no solution")
    return out


def nilpotency_index(a):
    """Smallest m with a**m == 0, or None if a is not nilpotent."""
    if a.rows != a.cols:
        raise ShapeError("non-square matrix")
    n = a.rows
    if n == 0:
        return 0
    # a D-linear nilpotent has index <= n over a division algebra; allow the
    # Q-dimension bound so split quaternion specs are still handled
    bound = n * a.algebra.dim
    p = DMatrix.identity(a.algebra, n)
    for m in range(1, bound + 1):
        p = p @ a
        if p.is_zero():
            return m
    return None


def nilpotent_exp(a):
    """exp(a) as a finite sum; a must be nilpotent."""
    m = nilpotency_index(a)
    if m is None:
        raise NilpotencyError("exponential of a non-nilpotent matrix")
    n = a.rows
    out = DMatrix.identity(a.algebra, n)
    term = DMatrix.identity(a.algebra, n)
    for k in range(1, m):
        term = (term @ a) / k
        out = out + term
    return out


def nilpotent_log(u):
    """log(u) for unipotent u, as a finite sum."""
    n = u.rows
    x = u - DMatrix.identity(u.algebra, n)
    m = nilpotency_index(x)
    if m is None:
        raise NilpotencyError("logarithm of a non-unipotent matrix")
    out = DMatrix.zeros(u.algebra, n, n)
    power = DMatrix.identity(u.algebra, n)
    for k in range(1, m):
        power = power @ x
        out = out + power * (rat(1 if k % 2 else -1) / k)
    return out


def trace_k_map(a):
    """Trace of a as a Q-linear map."""
    if a.rows != a.cols:
        raise ShapeError("trace of a non-square matrix")
    return a.algebra.dim * qtrace(a.coeffs[0])


def trace_k_product(a, b):
    """trace_k_map(a @ b) without forming the product."""
    if a.cols != b.rows or a.rows != b.cols:
        raise ShapeError("product is not square")
    alg = a.algebra
    d = alg.dim
    total = ZERO
    # only the 1-coordinate of the product matters
    for p in range(d):
        for q in range(d):
            c, r = alg.table[p][q]
            if r != 0:
                continue
            s = (a.coeffs[p] * b.coeffs[q].T).sum() if a.coeffs[p].size else ZERO
            if s:
                total += c * s
    return d * total


def bracket(a, b):
    return a @ b - b @ a


def vec_k(a):
    """Coordinates of a as a flat rational vector (entry-major, then D-coordinate)."""
    d = a.algebra.dim
    out = np.empty(a.rows * a.cols * d, dtype=object)
    for p in range(d):
        out[p::d] = a.coeffs[p].reshape(-1)
    return out


def unvec_k(algebra, v, rows, cols):
    d = algebra.dim
    return DMatrix(algebra, [np.array(v[p::d], dtype=object).reshape(rows, cols) for p in range(d)])


def stack_vecs(mats, length=None):
    """Matrix whose columns are vec_k of the given matrices."""
    if not mats:
        return qzeros(length or 0, 0)
    return np.stack([vec_k(m) for m in mats], axis=1)


def matrix_sum(mats, algebra, rows, cols):
    return reduce(lambda x, y: x + y, mats, DMatrix.zeros(algebra, rows, cols))
