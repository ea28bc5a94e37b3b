"""
Exact scalars: the rationals and the three kinds of division algebra over them.

Elements of D are stored by coordinates in the basis {1}, {1, s} with
s*s = delta, or {1, i, j, ij} with i*i = a, j*j = b, ij = -ji.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import isqrt

import gmpy2

Q = gmpy2.mpq
ZERO = Q(0)
ONE = Q(1)


class SpecMismatchError(ValueError):
    pass


class NonInvertibleError(ZeroDivisionError):
    pass


def rat(x):
    """Coerce int, Fraction, mpq or a string like "-3/4" to an exact rational."""
    if isinstance(x, type(ONE)):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Q(x)
    if isinstance(x, Fraction):
        return Q(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if "." in s or "e" in s.lower():
            raise ValueError("rationals must be written as p or p/q, got %r" % x)
        f = Fraction(s)
        return Q(f.numerator, f.denominator)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a Fraction or a string")
    # gmpy2 integers and anything else mpq understands
    return Q(x)


def rat_str(x):
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def is_rational_square(x):
    x = rat(x)
    if x < 0:
        return False
    p, q = int(x.numerator), int(x.denominator)
    r = isqrt(p * q)
    return r * r == p * q


@dataclass(frozen=True)
class AlgebraSpec:
    kind: str = "field"
    delta: object = None
    a: object = None
    b: object = None

    def __post_init__(self):
        if self.kind == "field":
            if self.delta is not None or self.a is not None or self.b is not None:
                raise ValueError("the field takes no parameters")
        elif self.kind == "quadratic":
            if self.delta is None:
                raise ValueError("quadratic algebra needs delta")
            d = rat(self.delta)
            if is_rational_square(d):
                raise ValueError("delta = %s is a rational square" % rat_str(d))
            object.__setattr__(self, "delta", d)
        elif self.kind == "quaternion":
            if self.a is None or self.b is None:
                raise ValueError("quaternion algebra needs a and b")
            a, b = rat(self.a), rat(self.b)
            if a == 0 or b == 0:
                raise ValueError("quaternion parameters must be nonzero")
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)
        else:
            raise ValueError("unknown algebra kind %r" % (self.kind,))

    @classmethod
    def field(cls):
        return cls("field")

    @classmethod
    def quadratic(cls, delta):
        return cls("quadratic", delta=delta)

    @classmethod
    def quaternion(cls, a, b):
        return cls("quaternion", a=a, b=b)

    @property
    def dim(self):
        return {"field": 1, "quadratic": 2, "quaternion": 4}[self.kind]

    @cached_property
    def table(self):
        """table[p][q] = (c, r) meaning e_p * e_q = c * e_r."""
        if self.kind == "field":
            return ((ONE, 0),),
        if self.kind == "quadratic":
            d = self.delta
            return ((ONE, 0), (ONE, 1)), ((ONE, 1), (d, 0))
        a, b = self.a, self.b
        return (
            ((ONE, 0), (ONE, 1), (ONE, 2), (ONE, 3)),
            ((ONE, 1), (a, 0), (ONE, 3), (a, 2)),
            ((ONE, 2), (-ONE, 3), (b, 0), (-b, 1)),
            ((ONE, 3), (-a, 2), (b, 1), (-a * b, 0)),
        )

    @cached_property
    def conj_signs(self):
        return (1,) + (-1,) * (self.dim - 1)

    @cached_property
    def basis_left_mult(self):
        """The d x d rational matrices of left multiplication by each basis element."""
        d = self.dim
        mats = []
        for p in range(d):
            m = [[ZERO] * d for _ in range(d)]
            for q in range(d):
                c, r = self.table[p][q]
                m[r][q] = c
            mats.append(m)
        return tuple(mats)

    def one(self):
        return DElement(self, (ONE,) + (ZERO,) * (self.dim - 1))

    def zero(self):
        return DElement(self, (ZERO,) * self.dim)

    def element(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        if len(coords) == 1 and self.dim > 1:
            coords = coords + (0,) * (self.dim - 1)
        return DElement(self, tuple(rat(c) for c in coords))

    def basis(self):
        d = self.dim
        return [DElement(self, tuple(ONE if q == p else ZERO for q in range(d))) for p in range(d)]

    def to_json(self):
        if self.kind == "field":
            return {"kind": "field"}
        if self.kind == "quadratic":
            return {"kind": "quadratic", "delta": rat_str(self.delta)}
        return {"kind": "quaternion", "a": rat_str(self.a), "b": rat_str(self.b)}

    @classmethod
    def from_json(cls, obj):
        kind = obj.get("kind")
        if kind == "field":
            return cls.field()
        if kind == "quadratic":
            return cls.quadratic(obj["delta"])
        if kind == "quaternion":
            return cls.quaternion(obj["a"], obj["b"])
        raise ValueError("unknown algebra kind %r" % (kind,))

    def __repr__(self):
        if self.kind == "field":
            return "AlgebraSpec.field()"
        if self.kind == "quadratic":
            return "AlgebraSpec.quadratic(%s)" % rat_str(self.delta)
        return "AlgebraSpec.quaternion(%s, %s)" % (rat_str(self.a), rat_str(self.b))


FIELD = AlgebraSpec.field()


def coords_mul(spec, x, y):
    d = spec.dim
    if d == 1:
        return (x[0] * y[0],)
    out = [ZERO] * d
    table = spec.table
    for p in range(d):
        xp = x[p]
        if not xp:
            continue
        row = table[p]
        for q in range(d):
            yq = y[q]
            if not yq:
                continue
            c, r = row[q]
            out[r] += c * xp * yq
    return tuple(out)


def coords_conj(spec, x):
    return tuple(s * c for s, c in zip(spec.conj_signs, x))


def coords_norm(spec, x):
    """x * conj(x), which is a rational."""
    if spec.kind == "field":
        return x[0] * x[0]
    if spec.kind == "quadratic":
        return x[0] * x[0] - spec.delta * x[1] * x[1]
    a, b = spec.a, spec.b
    return x[0] * x[0] - a * x[1] * x[1] - b * x[2] * x[2] + a * b * x[3] * x[3]


class DElement:
    """An element of a division algebra D over Q."""

    __slots__ = ("spec", "coords")

    def __init__(self, spec, coords):
        if len(coords) != spec.dim:
            raise ValueError("expected %d coordinates, got %d" % (spec.dim, len(coords)))
        self.spec = spec
        self.coords = tuple(coords)

    def _check(self, other):
        if isinstance(other, DElement):
            if other.spec != self.spec:
                raise SpecMismatchError("%r vs %r" % (self.spec, other.spec))
            return other
        return self.spec.element(other)

    def __add__(self, other):
        other = self._check(other)
        return DElement(self.spec, tuple(x + y for x, y in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return DElement(self.spec, tuple(-x for x in self.coords))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return DElement(self.spec, coords_mul(self.spec, self.coords, other.coords))

    def __rmul__(self, other):
        other = self._check(other)
        return other * self

    def conj(self):
        return DElement(self.spec, coords_conj(self.spec, self.coords))

    def norm(self):
        return coords_norm(self.spec, self.coords)

    def inv(self):
        if not any(self.coords):
            raise ZeroDivisionError("inverse of zero")
        n = self.norm()
        if n == 0:
            raise NonInvertibleError("%r has zero norm in the split algebra %r" % (self, self.spec))
        c = self.conj()
        return DElement(self.spec, tuple(x / n for x in c.coords))

    def trace_k(self):
        """Trace of left multiplication by self on D as a Q-vector space."""
        return self.spec.dim * self.coords[0]

    def is_zero(self):
        return not any(self.coords)

    def __eq__(self, other):
        if isinstance(other, DElement):
            return self.spec == other.spec and self.coords == other.coords
        try:
            return self.coords == self.spec.element(other).coords
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.coords))

    def to_json(self):
        return [rat_str(c) for c in self.coords]

    def __repr__(self):
        names = {1: ("",), 2: ("", "s"), 4: ("", "i", "j", "ij")}[self.spec.dim]
        terms = []
        for c, n in zip(self.coords, names):
            if c:
                terms.append(rat_str(c) + ("*" + n if n else ""))
        return "DElement(%s)" % (" + ".join(terms) or "0")


def conj(x):
    return x.conj()


def inv(x):
    return x.inv()


def trace_k(x):
    return x.trace_k()


def mul(x, y):
    if x.spec != y.spec:
        raise SpecMismatchError("%r vs %r" % (x.spec, y.spec))
    return x * y
