"""Hom-Jordan algebras given by structure constants and a twist map.

``mu[i][j][k]`` is the coefficient of ``e_k`` in ``mu(e_i, e_j)`` and
``alpha`` acts on column vectors (column ``j`` is ``alpha(e_j)``).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from itertools import combinations_with_replacement

from .exactlin import (
    ZERO, Subspace, frac, identity, kernel, mat_add, mat_mul, mat_vec, matrix,
    transpose, unflatten, unit, vector,
)


class AlgebraError(ValueError):
    pass


class MorphismError(AlgebraError):
    pass


class NotAnIdeal(AlgebraError):
    pass


@dataclass(frozen=True)
class Flags:
    commutative_checked: bool = False
    hom_jordan_checked: bool = False
    multiplicative_checked: bool = False
    asserted_simple: bool = False


@dataclass(frozen=True)
class HomAlgebra:
    n: int
    mu: tuple
    alpha: tuple
    name: str = ""
    flags: Flags = Flags()
    summands: tuple = ()

    def __post_init__(self):
        n = self.n
        if len(self.mu) != n or any(len(r) != n or any(len(v) != n for v in r)
                                    for r in self.mu):
            raise AlgebraError("structure constants must have shape %d x %d x %d" % (n, n, n))
        mu = tuple(tuple(vector(self.mu[i][j]) for j in range(n)) for i in range(n))
        alpha = matrix(self.alpha) if n else ()
        if len(alpha) != n or any(len(r) != n for r in alpha):
            raise AlgebraError("twist map must be %d x %d" % (n, n))
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "summands", tuple(self.summands))

    def product(self, i: int, j: int) -> tuple:
        return self.mu[i][j]

    def with_flags(self, **kw) -> "HomAlgebra":
        return replace(self, flags=replace(self.flags, **kw))


def algebra(n: int, products: dict, alpha=None, name: str = "", symmetric: bool = True,
            **kw) -> HomAlgebra:
    """Build an algebra from ``{(i, j): {k: coeff}}``; ``(j, i)`` is filled in too."""
    mu = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for (i, j), out in products.items():
        for k, c in out.items():
            mu[i][j][k] = frac(c)
            if symmetric:
                mu[j][i][k] = frac(c)
    if alpha is None:
        alpha = identity(n)
    return HomAlgebra(n, mu, alpha, name=name, **kw)


@dataclass(frozen=True)
class BilinearForm:
    gram: tuple

    def __call__(self, x, y):
        return sum((xi * g * yj for xi, row in zip(x, self.gram) for g, yj in zip(row, y)
                    if xi and g and yj), ZERO)


@dataclass(frozen=True)
class QuotientMap:
    source: HomAlgebra
    ideal: Subspace
    target: HomAlgebra
    pi: tuple
    representatives: tuple = field(default=())

    def project(self, x) -> tuple:
        if self.target.n == 0:
            return ()
        return mat_vec(self.pi, x)


@dataclass(frozen=True)
class HomJordanReport:
    ok: bool
    failing_tuple: tuple | None = None
    residual: tuple | None = None


# -- products --------------------------------------------------------------------

def _check_len(a: HomAlgebra, v):
    if len(v) != a.n:
        raise AlgebraError("vector of length %d for algebra of dimension %d" % (len(v), a.n))


def multiply(a: HomAlgebra, x, y) -> tuple:
    _check_len(a, x)
    _check_len(a, y)
    out = [ZERO] * a.n
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = a.mu[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = xi * yj
            for k, m in enumerate(row[j]):
                if m:
                    out[k] += c * m
    return tuple(out)


def basis_L(a: HomAlgebra) -> tuple:
    """``L_{e_i}`` for every basis vector."""
    cached = a.__dict__.get("_basis_L")
    if cached is None:
        n = a.n
        cached = tuple(tuple(tuple(a.mu[i][j][k] for j in range(n)) for k in range(n))
                       for i in range(n))
        object.__setattr__(a, "_basis_L", cached)
    return cached


def L_operator(a: HomAlgebra, x) -> tuple:
    """Matrix of ``y -> mu(x, y)``."""
    _check_len(a, x)
    n = a.n
    Ls = basis_L(a)
    out = [[ZERO] * n for _ in range(n)]
    for i, xi in enumerate(x):
        if xi:
            for r, row in enumerate(Ls[i]):
                for c, y in enumerate(row):
                    if y:
                        out[r][c] += xi * y
    return tuple(tuple(r) for r in out)


def _columns(m) -> tuple:
    return transpose(m) if m else ()


def commutativity_failure(a: HomAlgebra):
    for i in range(a.n):
        for j in range(i + 1, a.n):
            if a.mu[i][j] != a.mu[j][i]:
                return (i, j)
    return None


def check_commutative(a: HomAlgebra) -> bool:
    return commutativity_failure(a) is None


def multiplicativity_failure(a: HomAlgebra):
    cols = _columns(a.alpha)
    for i in range(a.n):
        for j in range(a.n):
            if mat_vec(a.alpha, a.mu[i][j]) != multiply(a, cols[i], cols[j]):
                return (i, j)
    return None


def check_multiplicative(a: HomAlgebra) -> bool:
    return multiplicativity_failure(a) is None


def hom_jordan_residual(a: HomAlgebra, x, y) -> tuple:
    """Left minus right side of the (unlinearised) Hom-Jordan identity at ``(x, y)``."""
    xx = multiply(a, x, x)
    a1x = mat_vec(a.alpha, x)
    a2x = mat_vec(a.alpha, a1x)
    lhs = multiply(a, a2x, multiply(a, y, xx))
    rhs = multiply(a, multiply(a, a1x, y), mat_vec(a.alpha, xx))
    return tuple(p - q for p, q in zip(lhs, rhs))


def check_hom_jordan(a: HomAlgebra) -> HomJordanReport:
    """Check the fully linearised Hom-Jordan identity on basis tuples.

    The identity is cubic in ``x``; replacing the three occurrences by ``u, v, w``
    and symmetrising gives a form that is symmetric in ``(u, v, w)``, so
    non-decreasing triples suffice.  Over a field of characteristic 0 this is
    equivalent to the identity for all ``x, y``.
    """
    if not check_commutative(a):
        raise AlgebraError("Hom-Jordan check needs a commutative product")
    n = a.n
    if n == 0:
        return HomJordanReport(True)

    def L(x):
        return L_operator(a, x)

    a1 = _columns(a.alpha)
    a2 = _columns(mat_mul(a.alpha, a.alpha))
    La1 = [L(v) for v in a1]
    La2 = [L(v) for v in a2]
    cache = {}

    def T(i, b, c):
        # columns indexed by y
        key = (i, min(b, c), max(b, c))
        if key not in cache:
            m = a.mu[b][c]
            cache[key] = tuple(
                tuple(p - q for p, q in zip(r1, r2))
                for r1, r2 in zip(mat_mul(La2[i], L(m)),
                                  mat_mul(L(mat_vec(a.alpha, m)), La1[i])))
        return cache[key]

    for u, v, w in combinations_with_replacement(range(n), 3):
        total = mat_add(mat_add(T(u, v, w), T(v, u, w)), T(w, u, v))
        for y in range(n):
            col = tuple(total[k][y] for k in range(n))
            if any(col):
                return HomJordanReport(False, (u, v, w, y), col)
    return HomJordanReport(True)


def validated(a: HomAlgebra) -> HomAlgebra:
    """Run the defining checks and record the outcome in the flags."""
    comm = check_commutative(a)
    hj = comm and check_hom_jordan(a).ok
    return a.with_flags(commutative_checked=comm, hom_jordan_checked=hj,
                        multiplicative_checked=check_multiplicative(a))


# -- subspaces attached to an algebra --------------------------------------------

def centralizer(a: HomAlgebra) -> Subspace:
    n = a.n
    rows = []
    for j in range(n):
        for k in range(n):
            rows.append({i: a.mu[i][j][k] for i in range(n) if a.mu[i][j][k]})
    return kernel(rows, n)


def annihilator_of(a: HomAlgebra, s: Subspace) -> Subspace:
    """``{x : mu(x, y) = 0 for all y in s}``."""
    n = a.n
    rows = []
    for y in s.basis:
        Ly = L_operator(a, y)
        rows.extend(Ly)  # mu(x, y) = mu(y, x) = L_y x
    return kernel(rows, n)


def product_subspace(a: HomAlgebra, s1: Subspace, s2: Subspace) -> Subspace:
    return Subspace(a.n, [multiply(a, u, v) for u in s1.basis for v in s2.basis])


def square(a: HomAlgebra) -> Subspace:
    """``mu(V, V)``."""
    return Subspace(a.n, [a.mu[i][j] for i in range(a.n) for j in range(i, a.n)])


def is_perfect(a: HomAlgebra) -> bool:
    return square(a).dim == a.n


def is_hom_subalgebra(a: HomAlgebra, s: Subspace) -> bool:
    if not s.is_invariant(a.alpha):
        return False
    return all(s.contains(multiply(a, u, v)) for u in s.basis for v in s.basis)


def is_hom_ideal(a: HomAlgebra, s: Subspace) -> bool:
    if not s.is_invariant(a.alpha):
        return False
    return all(s.contains(v) for b in s.basis for v in transpose(L_operator(a, b)))


def ideal_closure(a: HomAlgebra, seed: Subspace) -> Subspace:
    """Smallest Hom-ideal containing ``seed``."""
    full = Subspace.full(a.n)
    s = seed
    while True:
        nxt = s + s.image(a.alpha) + product_subspace(a, s, full)
        if nxt.dim == s.dim:
            return s
        s = nxt


def simplicity_evidence(a: HomAlgebra, probes: int = 50, seed: int = 0) -> dict:
    """Probe ideal closures of basis and random vectors (evidence, not proof)."""
    full = Subspace.full(a.n)
    rng = random.Random(seed)
    tested = 0
    failures = []
    vecs = [unit(a.n, i) for i in range(a.n)]
    while len(vecs) < a.n + probes and a.n:
        v = tuple(frac(rng.randint(-9, 9)) for _ in range(a.n))
        if any(v):
            vecs.append(v)
    for v in vecs:
        tested += 1
        if ideal_closure(a, Subspace(a.n, [v])) != full:
            failures.append(v)
            break
    nonzero_product = any(any(v) for r in a.mu for v in r)
    return {"probes": tested, "passed": not failures and nonzero_product and a.n > 0,
            "nonzero_product": nonzero_product}


# -- constructions -----------------------------------------------------------------

def direct_sum(a1: HomAlgebra, a2: HomAlgebra, name: str | None = None) -> HomAlgebra:
    n1, n2 = a1.n, a2.n
    n = n1 + n2
    mu = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            for k in range(n1):
                mu[i][j][k] = a1.mu[i][j][k]
    for i in range(n2):
        for j in range(n2):
            for k in range(n2):
                mu[n1 + i][n1 + j][n1 + k] = a2.mu[i][j][k]
    alpha = [list(r) + [ZERO] * n2 for r in a1.alpha] + [[ZERO] * n1 + list(r) for r in a2.alpha]
    if name is None:
        name = "%s+%s" % (a1.name, a2.name)
    return HomAlgebra(n, mu, alpha, name=name, summands=(a1, a2))


def summand_subspaces(a: HomAlgebra) -> tuple[Subspace, Subspace]:
    """Coordinate blocks of a direct sum built by :func:`direct_sum`."""
    if len(a.summands) != 2:
        raise AlgebraError("%s is not a recorded direct sum" % a.name)
    n1 = a.summands[0].n
    v1 = Subspace(a.n, [unit(a.n, i) for i in range(n1)])
    v2 = Subspace(a.n, [unit(a.n, i) for i in range(n1, a.n)])
    return v1, v2


def morphism_failure(a: HomAlgebra, beta) -> tuple | None:
    cols = _columns(beta)
    for i in range(a.n):
        for j in range(a.n):
            if mat_vec(beta, a.mu[i][j]) != multiply(a, cols[i], cols[j]):
                return (i, j)
    return None


def yau_twist(a: HomAlgebra, beta, name: str | None = None) -> HomAlgebra:
    """``(V, beta o mu, beta o alpha)`` for a morphism ``beta`` commuting with alpha."""
    beta = matrix(beta)
    bad = morphism_failure(a, beta)
    if bad is not None:
        raise MorphismError("beta is not multiplicative at basis pair %r" % (bad,))
    if mat_mul(beta, a.alpha) != mat_mul(a.alpha, beta):
        raise MorphismError("beta does not commute with the twist map")
    mu = [[mat_vec(beta, a.mu[i][j]) for j in range(a.n)] for i in range(a.n)]
    return HomAlgebra(a.n, mu, mat_mul(beta, a.alpha),
                      name=name or a.name + "^beta", flags=Flags(asserted_simple=False))


def commutant_constraints(alpha) -> list[dict]:
    """Rows of ``W -> W alpha - alpha W`` acting on row-major flattened ``W``."""
    n = len(alpha)
    rows = []
    for r in range(n):
        for c in range(n):
            row = {}
            for m in range(n):
                x = alpha[m][c]
                if x:
                    row[r * n + m] = row.get(r * n + m, ZERO) + x
                y = alpha[r][m]
                if y:
                    row[m * n + c] = row.get(m * n + c, ZERO) - y
            rows.append({k: v for k, v in row.items() if v})
    return rows


def commuting_operators(alpha) -> Subspace:
    n = len(alpha)
    return kernel(commutant_constraints(alpha), n * n)


def commutant_plus_algebra(alpha, name: str = "") -> HomAlgebra:
    """The commutant of ``alpha`` with the anticommutator product and ``w -> alpha w``."""
    alpha = matrix(alpha)
    n = len(alpha)
    W = commuting_operators(alpha)
    basis = [unflatten(b, n) for b in W.basis]
    d = W.dim

    def coords(m):
        return W.coordinates(tuple(x for r in m for x in r))

    mu = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            p = mat_add(mat_mul(basis[i], basis[j]), mat_mul(basis[j], basis[i]))
            mu[i][j] = mu[j][i] = coords(p)
    sigma = transpose([coords(mat_mul(alpha, b)) for b in basis]) if d else ()
    return HomAlgebra(d, mu, sigma, name=name or "plus-commutant")


def invariant_forms(a: HomAlgebra) -> list[BilinearForm]:
    """Basis of forms with ``f(mu(x, y), z) = f(x, mu(y, z))``."""
    n = a.n
    rows = []
    for i in range(n):
        for j in range(n):
            for l in range(n):
                row = {}
                for k in range(n):
                    c = a.mu[i][j][k]
                    if c:
                        row[k * n + l] = row.get(k * n + l, ZERO) + c
                    c = a.mu[j][l][k]
                    if c:
                        row[i * n + k] = row.get(i * n + k, ZERO) - c
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    space = kernel(rows, n * n)
    return [BilinearForm(unflatten(b, n)) for b in space.basis]


def quotient(a: HomAlgebra, k: Subspace, name: str | None = None) -> QuotientMap:
    if k.ambient_dim != a.n:
        raise NotAnIdeal("ideal lives in dimension %d, algebra has %d" % (k.ambient_dim, a.n))
    if not is_hom_ideal(a, k):
        raise NotAnIdeal("subspace is not a Hom-ideal")
    reps = tuple(j for j in range(a.n) if j not in set(k.pivots))
    n2 = len(reps)

    def proj(x):
        r = k.residual(x)
        return tuple(r[j] for j in reps)

    pi = transpose([proj(unit(a.n, i)) for i in range(a.n)]) if n2 else ()
    acols = _columns(a.alpha)
    mu2 = [[proj(a.mu[reps[p]][reps[q]]) for q in range(n2)] for p in range(n2)]
    alpha2 = transpose([proj(acols[reps[p]]) for p in range(n2)]) if n2 else ()
    target = HomAlgebra(n2, mu2, alpha2, name=name or "%s/K" % a.name)
    q = QuotientMap(a, k, target, pi, reps)
    # well defined on all of V, not just on the representatives
    for i in range(a.n):
        pe_i = proj(unit(a.n, i))
        if proj(acols[i]) != (mat_vec(alpha2, pe_i) if n2 else ()):
            raise AlgebraError("induced twist map is not well defined")
        for j in range(a.n):
            if proj(a.mu[i][j]) != multiply(target, pe_i, proj(unit(a.n, j))):
                raise AlgebraError("induced product is not well defined")
    return q


