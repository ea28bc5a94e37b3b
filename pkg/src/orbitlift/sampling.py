"""Seeded random samples of the objects the checks quantify over."""

import hashlib
import random

from .dlinalg import DMatrix, SingularMatrixError, block_diag, kron_rational, nilpotent_exp, qeye
from .hermitian import HermitianModule, lie_algebra_basis
from .scalars import NonInvertibleError, rat


def rng_for(seed, name):
    """An independent stream per (seed, name), stable across runs and platforms."""
    h = hashlib.sha256(("%s:%s" % (seed, name)).encode()).digest()
    return random.Random(int.from_bytes(h[:8], "big"))


def rand_rational(rng, bound=10, nonzero=False):
    while True:
        x = rat(rng.randint(-bound, bound)) / rng.randint(1, bound)
        if x or not nonzero:
            return x


def rand_dmatrix(rng, algebra, rows, cols, bound=10, density=1.0):
    out = DMatrix.zeros(algebra, rows, cols)
    for p in range(algebra.dim):
        for r in range(rows):
            for c in range(cols):
                if rng.random() < density:
                    out.coeffs[p][r, c] = rand_rational(rng, bound)
    return out


def rand_combination(rng, basis, bound=10, algebra=None, shape=None):
    if not basis:
        return DMatrix.zeros(algebra, *shape)
    out = basis[0] * 0
    for b in basis:
        c = rand_rational(rng, bound)
        if c:
            out = out + b * c
    return out


def rand_lie_element(rng, module, bound=10, basis=None):
    basis = lie_algebra_basis(module) if basis is None else basis
    return rand_combination(rng, basis, bound, module.algebra, (module.dim, module.dim))


def rand_n_element(rng, grading, bound=10):
    """exp of a random element of n (a random element of N)."""
    L = rand_combination(rng, grading.n_basis, bound, grading.algebra, (grading.dim, grading.dim))
    return nilpotent_exp(L)


def rand_isometry(rng, module, bound=10, tries=20):
    """A Cayley transform of a random Lie algebra element, possibly times -1."""
    from .dualpair import cayley

    basis = lie_algebra_basis(module)
    for _ in range(tries):
        Z = rand_lie_element(rng, module, bound, basis)
        try:
            g = cayley(Z)
        except (SingularMatrixError, NonInvertibleError, ZeroDivisionError):
            continue
        return -g if rng.random() < 0.5 else g
    return module.identity()


def rand_mtilde(rng, lift, bound=10, unipotent_terms=2):
    """A random element of M~_X~: isometries of the attached forms acting rowwise,
    times a few unipotent exponentials from the nilpotent part of m~_X~."""
    blocks = []
    for row in lift.tableau_t.rows:
        g = rand_isometry(rng, row.form, bound)
        blocks.append(kron_rational(g, qeye(row.t)))
    m = block_diag(blocks, lift.Vtilde.algebra)
    nil = _nilpotent_cache(lift)
    for _ in range(unipotent_terms):
        if not nil:
            break
        Z = rng.choice(nil) * rand_rational(rng, bound)
        m = m @ nilpotent_exp(Z)
    return m


def _nilpotent_cache(lift):
    from .dualpair import nilpotent_centralizer_elements

    if not hasattr(lift, "_nil_mt"):
        lift._nil_mt = nilpotent_centralizer_elements(lift.grading_t)
    return lift._nil_mt


def rand_hermitian_module(rng, algebra, n, epsilon, bound=10):
    """A random nondegenerate epsilon-Hermitian module of dim n (resampled until nondegenerate)."""
    from .hermitian import DegenerateFormError

    if algebra.dim == 1 and epsilon == -1 and n % 2:
        raise ValueError("an alternating form on an odd-dimensional space is degenerate")
    while True:
        A = rand_dmatrix(rng, algebra, n, n, bound)
        G = A + A.ct() * epsilon
        try:
            return HermitianModule(G, epsilon)
        except DegenerateFormError:
            continue
