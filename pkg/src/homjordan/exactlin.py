"""Exact linear algebra over the rationals.

Vectors are tuples of :class:`~fractions.Fraction`, matrices are tuples of row
tuples.  A matrix acts on column vectors, so column ``c`` of an operator holds
the image of the ``c``-th basis vector.  Operators are flattened row-major
when they are treated as vectors of ``End(V)``.

Subspaces are stored by their reduced row echelon basis, which is unique, so
two subspaces are equal exactly when their stored bases are equal.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class AmbientMismatch(ValueError):
    pass


def frac(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted: %r" % (x,))
    return Fraction(x)


def fstr(x: Fraction) -> str:
    x = frac(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


# -- vectors and matrices ----------------------------------------------------

def vector(xs: Iterable) -> tuple:
    return tuple(frac(x) for x in xs)


def matrix(rows: Iterable[Iterable]) -> tuple:
    m = tuple(vector(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def zeros(rows: int, cols: int) -> tuple:
    return tuple((ZERO,) * cols for _ in range(rows))


def identity(n: int) -> tuple:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def unit(n: int, i: int) -> tuple:
    return tuple(ONE if j == i else ZERO for j in range(n))


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def transpose(m: Sequence[Sequence], cols: int | None = None) -> tuple:
    if not m:
        return tuple(() for _ in range(cols or 0))
    return tuple(zip(*m))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    n_inner = len(b)
    cols = len(b[0]) if b else 0
    if a and len(a[0]) != n_inner:
        raise ValueError("shape mismatch in product")
    out = []
    for row in a:
        acc = [ZERO] * cols
        for t, x in enumerate(row):
            if x:
                brow = b[t]
                for j in range(cols):
                    y = brow[j]
                    if y:
                        acc[j] += x * y
        out.append(tuple(acc))
    return tuple(out)


def mat_vec(a: Sequence[Sequence], v: Sequence) -> tuple:
    if a and len(a[0]) != len(v):
        raise ValueError("shape mismatch in matrix-vector product")
    return tuple(sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a)


def mat_add(a, b) -> tuple:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b) -> tuple:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a) -> tuple:
    c = frac(c)
    return tuple(tuple(c * x for x in r) for r in a)


def mat_pow(a, k: int) -> tuple:
    if k < 0:
        raise ValueError("negative power")
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def is_zero(m) -> bool:
    return all(not x for r in m for x in r)


def vec_add(u, v) -> tuple:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u, v) -> tuple:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c, v) -> tuple:
    return tuple(c * x for x in v)


def flatten(m) -> tuple:
    return tuple(x for r in m for x in r)


def unflatten(v: Sequence, n: int) -> tuple:
    if len(v) != n * n:
        raise ValueError("expected %d entries, got %d" % (n * n, len(v)))
    return tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n))


def block_diag(a, b) -> tuple:
    na, nb = len(a), len(b)
    rows = [tuple(r) + (ZERO,) * nb for r in a]
    rows += [(ZERO,) * na + tuple(r) for r in b]
    return tuple(rows)


# -- elimination ---------------------------------------------------------------

def _sparse(row) -> dict:
    if isinstance(row, dict):
        return {j: frac(x) for j, x in row.items() if x}
    return {j: frac(x) for j, x in enumerate(row) if x}


class _Echelon:
    """Incremental Gauss-Jordan reduction on sparse rows.

    Every stored row is normalised to 1 at its pivot and is zero at all other
    pivot columns, so the stored set is always in reduced echelon form.
    """

    __slots__ = ("ncols", "rows")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        for c in [c for c in v if c in self.rows]:
            coef = v[c]
            for j, x in self.rows[c].items():
                y = v.get(j, ZERO) - coef * x
                if y:
                    v[j] = y
                else:
                    v.pop(j, None)
        return v

    def add(self, row) -> bool:
        v = self.reduce(_sparse(row))
        if not v:
            return False
        lead = min(v)
        inv = 1 / v[lead]
        v = {j: x * inv for j, x in v.items()}
        for other in self.rows.values():
            coef = other.get(lead)
            if coef:
                for j, x in v.items():
                    y = other.get(j, ZERO) - coef * x
                    if y:
                        other[j] = y
                    else:
                        del other[j]
        self.rows[lead] = v
        return True

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def dense_rows(self) -> tuple:
        out = []
        for p in self.pivots():
            r = self.rows[p]
            out.append(tuple(r.get(j, ZERO) for j in range(self.ncols)))
        return tuple(out)


def _echelon(rows: Iterable, ncols: int) -> _Echelon:
    e = _Echelon(ncols)
    for r in rows:
        e.add(r)
    return e


def rref(m: Sequence[Sequence]) -> tuple[tuple, int, list[int]]:
    """Reduced row echelon form with zero rows dropped.

    Returns ``(rows, rank, pivot_columns)``.
    """
    _, cols = shape(m)
    e = _echelon(m, cols)
    rows = e.dense_rows()
    return rows, len(rows), e.pivots()


def rank(m: Sequence[Sequence]) -> int:
    return rref(m)[1]


def kernel(rows: Iterable, ncols: int) -> "Subspace":
    """Null space of a system given as dense or sparse (dict) rows."""
    e = _echelon(rows, ncols)
    free = [j for j in range(ncols) if j not in e.rows]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for p, r in e.rows.items():
            x = r.get(f)
            if x:
                v[p] = -x
        basis.append(v)
    return Subspace(ncols, basis)


def nullspace(m: Sequence[Sequence], cols: int | None = None) -> "Subspace":
    """``{v : m v = 0}``; ``cols`` is needed only when ``m`` has no rows."""
    if cols is None:
        cols = shape(m)[1]
    return kernel(m, cols)


def inverse(m: Sequence[Sequence]) -> tuple:
    n = len(m)
    aug = [tuple(r) + unit(n, i) for i, r in enumerate(m)]
    rows, rk, piv = rref(aug)
    if rk < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(r[n:]) for r in rows)


def is_invertible(m: Sequence[Sequence]) -> bool:
    return rank(m) == len(m)


# -- subspaces -------------------------------------------------------------------

class Subspace:
    """A linear subspace of ``Q^ambient_dim`` in canonical (RREF) form."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_hash")

    def __init__(self, ambient_dim: int, vectors: Iterable = ()):
        vectors = list(vectors)
        for v in vectors:
            if not isinstance(v, dict) and len(v) != ambient_dim:
                raise AmbientMismatch("vector of length %d in ambient %d" % (len(v), ambient_dim))
        e = _echelon(vectors, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis = e.dense_rows()
        self.pivots = tuple(e.pivots())
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, identity(n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(
                "ambient dimensions differ: %d vs %d" % (self.ambient_dim, other.ambient_dim))

    def residual(self, v: Sequence) -> tuple:
        """``v`` minus its component along the pivots (zero iff ``v`` is inside)."""
        if len(v) != self.ambient_dim:
            raise AmbientMismatch("vector of length %d in ambient %d" % (len(v), self.ambient_dim))
        r = list(vector(v))
        for p, row in zip(self.pivots, self.basis):
            c = r[p]
            if c:
                for j in range(p, self.ambient_dim):
                    if row[j]:
                        r[j] -= c * row[j]
        return tuple(r)

    def contains(self, v: Sequence) -> bool:
        return not any(self.residual(v))

    __contains__ = contains

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of ``v`` in the stored basis; raises if ``v`` is outside."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(frac(v[p]) for p in self.pivots)

    def contains_space(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(b) for b in other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient_dim, self.basis))
        return self._hash

    def __repr__(self):
        rows = ", ".join("(" + ", ".join(fstr(x) for x in r) + ")" for r in self.basis)
        return "Subspace(%d, [%s])" % (self.ambient_dim, rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        constraints = self.annihilator().basis + other.annihilator().basis
        return kernel(constraints, self.ambient_dim)

    def annihilator(self) -> "Subspace":
        """``{w : w . b = 0 for every basis vector b}``."""
        return kernel(self.basis, self.ambient_dim)

    def complement(self) -> "Subspace":
        """Span of the standard vectors at the non-pivot coordinates."""
        piv = set(self.pivots)
        return Subspace(self.ambient_dim,
                        [unit(self.ambient_dim, j) for j in range(self.ambient_dim) if j not in piv])

    def image(self, m: Sequence[Sequence]) -> "Subspace":
        return Subspace(len(m), [mat_vec(m, b) for b in self.basis])

    def is_invariant(self, m: Sequence[Sequence]) -> bool:
        return all(self.contains(mat_vec(m, b)) for b in self.basis)


def span(ambient_dim: int, vectors: Iterable = ()) -> Subspace:
    return Subspace(ambient_dim, vectors)


def subspace_sum(s1: Subspace, s2: Subspace) -> Subspace:
    return s1 + s2


def subspace_intersect(s1: Subspace, s2: Subspace) -> Subspace:
    return s1 & s2


def subspace_contains(s: Subspace, v: Sequence) -> bool:
    return s.contains(v)


def subspace_eq(s1: Subspace, s2: Subspace) -> bool:
    s1._check(s2)
    return s1 == s2


def is_direct(s1: Subspace, s2: Subspace) -> bool:
    s1._check(s2)
    return (s1 + s2).dim == s1.dim + s2.dim


def complement(s: Subspace) -> Subspace:
    return s.complement()


def column_space(m: Sequence[Sequence], rows: int | None = None) -> Subspace:
    n = len(m) if rows is None else rows
    return Subspace(n, transpose(m))


def projection(onto: Subspace, along: Subspace) -> tuple:
    """Matrix of the projection onto ``onto`` with kernel ``along``."""
    n = onto.ambient_dim
    onto._check(along)
    if onto.dim + along.dim != n or not is_direct(onto, along):
        raise ValueError("subspaces are not complementary")
    if n == 0:
        return ()
    cols = list(onto.basis) + list(along.basis)
    basis_mat = transpose(cols)
    keep = tuple(ONE if i < onto.dim else ZERO for i in range(n))
    scaled = tuple(tuple(x * keep[j] for j, x in enumerate(r)) for r in basis_mat)
    return mat_mul(scaled, inverse(basis_mat))
