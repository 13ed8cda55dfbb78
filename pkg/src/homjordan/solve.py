"""Derivation-type operator spaces as null spaces of linear systems.

Each kind is described by a list of equations in a few operator blocks
``X_0, X_1, ...`` (``D``, ``D'``, ``D''``).  Every equation is a sum of three
kinds of terms evaluated on a basis pair ``(e_i, e_j)``:

* ``"left"``:  ``mu(X e_i, alpha^k e_j)``
* ``"right"``: ``mu(alpha^k e_i, X e_j)``
* ``"after"``: ``X mu(e_i, e_j)``

All blocks must also commute with ``alpha``.  The published space of a kind is
the projection of the solution space onto block 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import HomAlgebra, commutant_constraints, multiply
from .exactlin import (
    ZERO, Subspace, flatten, fstr, kernel, mat_add, mat_mul, mat_pow, mat_sub, mat_vec,
    transpose, unflatten,
)

KINDS = ("der", "gder", "qder", "c", "qc", "zder")

# kind -> (number of blocks, equations); each equation is [(coef, term, block), ...]
SYSTEMS = {
    "commutant": (1, []),
    "der": (1, [[(1, "after", 0), (-1, "left", 0), (-1, "right", 0)]]),
    "gder": (3, [[(1, "left", 0), (1, "right", 1), (-1, "after", 2)]]),
    "qder": (2, [[(1, "left", 0), (1, "right", 0), (-1, "after", 1)]]),
    "c": (1, [[(1, "left", 0), (-1, "right", 0)], [(1, "left", 0), (-1, "after", 0)]]),
    "qc": (1, [[(1, "left", 0), (-1, "right", 0)]]),
    "zder": (1, [[(1, "left", 0)], [(1, "after", 0)]]),
}


@dataclass(frozen=True)
class MapSpace:
    kind: str
    k: int
    space: Subspace
    algebra: HomAlgebra = field(compare=False, repr=False, default=None)
    witness: Subspace | None = field(compare=False, repr=False, default=None)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def n(self) -> int:
        return self.algebra.n

    def operators(self) -> list:
        return [unflatten(b, self.algebra.n) for b in self.space.basis]

    def contains(self, op) -> bool:
        return self.space.contains(flatten(op))

    def report(self) -> dict:
        return {"kind": self.kind, "k": self.k, "dim": self.dim,
                "basis": [[fstr(x) for x in b] for b in self.space.basis]}


@dataclass(frozen=True)
class GDerWitness:
    triple_space: Subspace

    def triples(self, n: int) -> list:
        m = n * n
        return [tuple(unflatten(b[t * m:(t + 1) * m], n) for t in range(3))
                for b in self.triple_space.basis]


@dataclass(frozen=True)
class Aggregate:
    kind: str
    per_k: tuple
    total: Subspace
    direct: bool

    def report(self) -> dict:
        return {"kind": self.kind, "max_power": len(self.per_k) - 1,
                "per_k_dims": [s.dim for s in self.per_k],
                "total_dim": self.total.dim, "direct": self.direct}


# -- operator products ------------------------------------------------------------

def _square_pair(d1, d2):
    if len(d1) != len(d2) or any(len(r) != len(d1) for r in d1) or any(len(r) != len(d2) for r in d2):
        raise ValueError("operators must be square of equal size")


def nu_prime(d1, d2) -> tuple:
    """Commutator ``d1 d2 - d2 d1``."""
    _square_pair(d1, d2)
    return mat_sub(mat_mul(d1, d2), mat_mul(d2, d1))


def nu(d1, d2) -> tuple:
    """Anticommutator ``d1 d2 + d2 d1``."""
    _square_pair(d1, d2)
    return mat_add(mat_mul(d1, d2), mat_mul(d2, d1))


def sigma(a: HomAlgebra, d) -> tuple:
    _square_pair(a.alpha, d)
    return mat_mul(a.alpha, d)


# -- assembly ------------------------------------------------------------------------

def _tables(a: HomAlgebra, k: int):
    n = a.n
    ak_cols = transpose(mat_pow(a.alpha, k)) if n else ()
    unit = [tuple(1 if t == p else 0 for t in range(n)) for p in range(n)]
    # left[j][p] = mu(e_p, alpha^k e_j), right[i][p] = mu(alpha^k e_i, e_p)
    left = [[multiply(a, unit[p], ak_cols[j]) for p in range(n)] for j in range(n)]
    right = [[multiply(a, ak_cols[i], unit[p]) for p in range(n)] for i in range(n)]
    return left, right


def constraint_rows(a: HomAlgebra, kind: str, k: int) -> tuple[list, int]:
    """Sparse rows of the linear system for ``kind`` at power ``k``."""
    if k < 0:
        raise ValueError("power must be non-negative")
    nblocks, equations = SYSTEMS[kind]
    n = a.n
    m = n * n
    rows = []
    base = commutant_constraints(a.alpha)
    for b in range(nblocks):
        rows.extend({b * m + j: x for j, x in r.items()} for r in base)
    if not equations:
        return rows, nblocks * m
    left, right = _tables(a, k)
    for eq in equations:
        for i in range(n):
            for j in range(n):
                prod_ij = a.mu[i][j]
                acc = [dict() for _ in range(n)]  # one row per output coordinate r
                for coef, term, blk in eq:
                    off = blk * m
                    if term == "after":
                        for mm, c in enumerate(prod_ij):
                            if c:
                                for r in range(n):
                                    idx = off + r * n + mm
                                    acc[r][idx] = acc[r].get(idx, ZERO) + coef * c
                    elif term == "left":
                        # sum_p X[p][i] mu(e_p, alpha^k e_j)
                        for p in range(n):
                            vec = left[j][p]
                            idx = off + p * n + i
                            for r, c in enumerate(vec):
                                if c:
                                    acc[r][idx] = acc[r].get(idx, ZERO) + coef * c
                    else:
                        for p in range(n):
                            vec = right[i][p]
                            idx = off + p * n + j
                            for r, c in enumerate(vec):
                                if c:
                                    acc[r][idx] = acc[r].get(idx, ZERO) + coef * c
                for row in acc:
                    row = {t: x for t, x in row.items() if x}
                    if row:
                        rows.append(row)
    return rows, nblocks * m


def solution_space(a: HomAlgebra, kind: str, k: int) -> Subspace:
    rows, ncols = constraint_rows(a, kind, k)
    return kernel(rows, ncols)


def _project_first_block(space: Subspace, m: int) -> Subspace:
    return Subspace(m, [b[:m] for b in space.basis])


def solve_kind(a: HomAlgebra, kind: str, k: int) -> MapSpace:
    if kind not in SYSTEMS:
        raise ValueError("unknown kind %r" % kind)
    full = solution_space(a, kind, k)
    nblocks = SYSTEMS[kind][0]
    m = a.n * a.n
    if nblocks == 1:
        return MapSpace(kind, k, full, a)
    return MapSpace(kind, k, _project_first_block(full, m), a, witness=full)


def commutant(a: HomAlgebra) -> MapSpace:
    return solve_kind(a, "commutant", 0)


def der_k(a: HomAlgebra, k: int) -> MapSpace:
    return solve_kind(a, "der", k)


def gder_k(a: HomAlgebra, k: int) -> tuple[MapSpace, GDerWitness]:
    ms = solve_kind(a, "gder", k)
    return ms, GDerWitness(ms.witness)


def qder_k(a: HomAlgebra, k: int) -> tuple[MapSpace, list]:
    ms = solve_kind(a, "qder", k)
    return ms, witness_pairs(ms)


def c_k(a: HomAlgebra, k: int) -> MapSpace:
    return solve_kind(a, "c", k)


def qc_k(a: HomAlgebra, k: int) -> MapSpace:
    return solve_kind(a, "qc", k)


def zder_k(a: HomAlgebra, k: int) -> MapSpace:
    return solve_kind(a, "zder", k)


def witness_pairs(ms: MapSpace) -> list:
    """Basis of the ``(D, D')`` solution space of a quasiderivation solve."""
    n = ms.algebra.n
    m = n * n
    return [(unflatten(b[:m], n), unflatten(b[m:], n)) for b in ms.witness.basis]


class Spaces:
    """Per-algebra cache of solved operator spaces."""

    def __init__(self, a: HomAlgebra):
        self.a = a
        self._cache = {}

    def get(self, kind: str, k: int) -> MapSpace:
        key = (kind, k)
        if key not in self._cache:
            self._cache[key] = solve_kind(self.a, kind, k)
        return self._cache[key]

    def aggregate(self, kind: str, K: int) -> Aggregate:
        if K < 0:
            raise ValueError("max power must be non-negative")
        per_k = tuple(self.get(kind, k) for k in range(K + 1))
        m = self.a.n * self.a.n
        total = Subspace(m, [b for s in per_k for b in s.space.basis])
        return Aggregate(kind, per_k, total, total.dim == sum(s.dim for s in per_k))


def aggregate(a: HomAlgebra, kind: str, K: int) -> Aggregate:
    return Spaces(a).aggregate(kind, K)


# -- direct evaluation -------------------------------------------------------------

def _cols(m):
    return transpose(m) if m else ()


def identity_defect(a: HomAlgebra, kind: str, k: int, ops) -> dict | None:
    """Evaluate the defining identities of ``kind`` for concrete operators.

    ``ops`` holds one matrix per block.  Returns ``None`` when everything holds,
    otherwise the first failure found.
    """
    nblocks, equations = SYSTEMS[kind]
    if len(ops) != nblocks:
        raise ValueError("%s needs %d operators" % (kind, nblocks))
    for b, X in enumerate(ops):
        if mat_mul(X, a.alpha) != mat_mul(a.alpha, X):
            return {"reason": "does not commute with alpha", "block": b}
    ak = _cols(mat_pow(a.alpha, k))
    images = [_cols(X) for X in ops]  # images[b][i] = X_b e_i
    for i in range(a.n):
        for j in range(a.n):
            for e, eq in enumerate(equations):
                total = [ZERO] * a.n
                for coef, term, blk in eq:
                    if term == "left":
                        v = multiply(a, images[blk][i], ak[j])
                    elif term == "right":
                        v = multiply(a, ak[i], images[blk][j])
                    else:
                        v = mat_vec(ops[blk], a.mu[i][j])
                    total = [t + coef * x for t, x in zip(total, v)]
                if any(total):
                    return {"reason": "identity fails", "equation": e, "pair": [i, j],
                            "residual": [fstr(x) for x in total]}
    return None


def find_companions(a: HomAlgebra, kind: str, k: int, D):
    """Companion maps for ``D`` (e.g. ``D'`` for a quasiderivation), or ``None``."""
    nblocks, _ = SYSTEMS[kind]
    n = a.n
    m = n * n
    if mat_mul(D, a.alpha) != mat_mul(a.alpha, D):
        return None
    if nblocks == 1:
        return () if identity_defect(a, kind, k, (D,)) is None else None
    rows, _ = constraint_rows(a, kind, k)
    d = flatten(D)
    t = (nblocks - 1) * m
    folded = []
    for r in rows:
        new = {}
        tc = ZERO
        for idx, x in r.items():
            if idx < m:
                tc += x * d[idx]
            else:
                new[idx - m] = x
        if tc:
            new[t] = tc
        if new:
            folded.append(new)
    sol = kernel(folded, t + 1)
    for b in sol.basis:
        if b[t]:
            v = [x / b[t] for x in b[:t]]
            return tuple(unflatten(v[s * m:(s + 1) * m], n) for s in range(nblocks - 1))
    return None


def member_defect(a: HomAlgebra, kind: str, k: int, D) -> dict | None:
    """``None`` when ``D`` lies in the ``kind`` space at power ``k``."""
    if SYSTEMS[kind][0] == 1:
        return identity_defect(a, kind, k, (D,))
    if mat_mul(D, a.alpha) != mat_mul(a.alpha, D):
        return {"reason": "does not commute with alpha", "block": 0}
    if find_companions(a, kind, k, D) is None:
        return {"reason": "no companion maps exist"}
    return None
