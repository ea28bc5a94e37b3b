"""Enumeration of admissible tableaux with simple attached forms."""

from .dlinalg import DMatrix
from .hermitian import HermitianModule
from .scalars import FIELD, AlgebraSpec
from .tableaux import TableauRow, YoungTableau

CYCLE = (1, -1, 2, -2)


def partitions(n, largest=None):
    """Partitions of n as non-increasing lists."""
    largest = n if largest is None else largest
    if n == 0:
        yield []
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield [first] + rest


def grouped(parts):
    """[3, 3, 1] -> [(3, 2), (1, 1)]."""
    out = []
    for p in parts:
        if out and out[-1][0] == p:
            out[-1] = (p, out[-1][1] + 1)
        else:
            out.append((p, 1))
    return out


def _skew_unit(algebra):
    if algebra.kind == "quadratic":
        return algebra.element(0, 1)
    return algebra.element(0, 1, 0, 0)


def attached_form(algebra, eps, mult, start):
    """A simple eps-Hermitian module of dim mult, or None if there is none of this shape."""
    entries = [CYCLE[(start + a) % len(CYCLE)] for a in range(mult)]
    if eps == 1:
        return HermitianModule.diagonal(entries, 1, algebra)
    if algebra.kind == "field":
        return HermitianModule.hyperbolic(mult, -1, algebra) if mult % 2 == 0 else None
    u = _skew_unit(algebra)
    grid = [[u * e if i == j else 0 for j, _ in enumerate(entries)] for i, e in enumerate(entries)]
    return HermitianModule(DMatrix.from_entries(algebra, grid), -1)


def algebra_tag(algebra):
    if algebra.kind == "field":
        return "k"
    if algebra.kind == "quadratic":
        return "q(%s)" % algebra.to_json()["delta"]
    j = algebra.to_json()
    return "h(%s,%s)" % (j["a"], j["b"])


def admissible_tableaux(max_size, algebra=FIELD, variants=2, min_size=1):
    """(name, tableau, epsilon) for every partition of size min_size..max_size,
    both signs, and up to `variants` choices of diagonal entries."""
    out = []
    seen = set()
    for n in range(min_size, max_size + 1):
        for parts in partitions(n):
            rows = grouped(parts)
            for epsilon in (1, -1):
                for v in range(variants):
                    built = []
                    for j, (t, mult) in enumerate(rows):
                        eps = epsilon * (-1) ** (t - 1)
                        form = attached_form(algebra, eps, mult, v + j)
                        if form is None:
                            built = None
                            break
                        built.append(TableauRow(t, form))
                    if built is None:
                        break
                    tab = YoungTableau(built, algebra)
                    key = (epsilon, repr(tab.to_json(epsilon)))
                    if key in seen:
                        continue
                    seen.add(key)
                    name = "%s/%s/%s/v%d" % (algebra_tag(algebra), "+" if epsilon == 1 else "-",
                                             tab.exponent_notation(), v)
                    out.append((name, tab, epsilon))
    return out


DIVISION_ALGEBRAS = (
    AlgebraSpec.quadratic(-1),
    AlgebraSpec.quadratic(5),
    AlgebraSpec.quaternion(-1, -1),
)
