"""Named example algebras used by the generator and the test suite."""
from __future__ import annotations

import random
from dataclasses import replace
from fractions import Fraction

from .core import (
    HomAlgebra, algebra, commutant_plus_algebra, direct_sum, validated, yau_twist,
)
from .exactlin import identity, mat_mul, matrix, transpose


def abelian(n: int, alpha=None, name: str | None = None) -> HomAlgebra:
    return validated(algebra(n, {}, alpha, name=name or "abelian-%d" % n))


def unital_one() -> HomAlgebra:
    """One-dimensional algebra with ``mu(e, e) = e``."""
    a = algebra(1, {(0, 0): {0: 1}}, name="unital-1")
    return validated(a).with_flags(asserted_simple=True)


def dual_numbers(alpha=None, name: str = "dual-numbers") -> HomAlgebra:
    """Basis ``e, f`` with ``e e = e``, ``e f = f``, ``f f = 0``."""
    return validated(algebra(2, {(0, 0): {0: 1}, (0, 1): {1: 1}}, alpha, name=name))


def truncated_polynomials(m: int, name: str | None = None) -> HomAlgebra:
    """``F[x]/(x^m)`` on the basis ``1, x, ..., x^(m-1)``."""
    prods = {}
    for i in range(m):
        for j in range(i, m):
            if i + j < m:
                prods[(i, j)] = {i + j: 1}
    return validated(algebra(m, prods, name=name or "trunc-poly-%d" % m))


def symmetric_jordan_2x2() -> HomAlgebra:
    """Symmetric 2x2 matrices with ``x o y = (xy + yx)/2``; basis ``E11, E22, E12+E21``."""
    h = Fraction(1, 2)
    a = algebra(3, {(0, 0): {0: 1}, (1, 1): {1: 1}, (0, 2): {2: h}, (1, 2): {2: h},
                    (2, 2): {0: 1, 1: 1}}, name="sym2-jordan")
    return validated(a).with_flags(asserted_simple=True)


def _sym2_conjugation(p) -> tuple:
    """Matrix of ``x -> p x p^T`` on the basis of :func:`symmetric_jordan_2x2`."""
    p = matrix(p)
    basis = [((1, 0), (0, 0)), ((0, 0), (0, 1)), ((0, 1), (1, 0))]
    cols = []
    for b in basis:
        y = mat_mul(mat_mul(p, matrix(b)), transpose(p))
        cols.append((y[0][0], y[1][1], y[0][1]))
    return transpose(cols)


def yau(a: HomAlgebra, beta, name: str) -> HomAlgebra:
    return validated(yau_twist(a, beta, name=name))


def dual_yau(lam) -> HomAlgebra:
    lam = Fraction(lam)
    return yau(dual_numbers(), [[1, 0], [0, lam]], "dual-yau-%s" % lam)


def poly_yau(m: int, lam) -> HomAlgebra:
    lam = Fraction(lam)
    beta = [[lam ** i if i == j else 0 for j in range(m)] for i in range(m)]
    return yau(truncated_polynomials(m), beta, "trunc-poly-%d-yau-%s" % (m, lam))


def sym2_rotated() -> HomAlgebra:
    """Yau twist of the symmetric 2x2 Jordan algebra by a rational rotation."""
    r = [[Fraction(3, 5), Fraction(-4, 5)], [Fraction(4, 5), Fraction(3, 5)]]
    return yau(symmetric_jordan_2x2(), _sym2_conjugation(r), "sym2-yau-rot")


def plus_algebra(alpha, name: str) -> HomAlgebra:
    a = validated(commutant_plus_algebra(alpha, name=name))
    return a


def perfect_with_center() -> HomAlgebra:
    """Peirce-type algebra ``F e + F m + F z``.

    ``e e = e``, ``e m = m/2``, ``m m = z`` and ``z`` annihilates everything.
    It is perfect and its centralizer is ``F z``.
    """
    h = Fraction(1, 2)
    return validated(algebra(3, {(0, 0): {0: 1}, (0, 1): {1: h}, (1, 1): {2: 1}},
                             name="perfect-center"))


def perfect_center_yau(lam) -> HomAlgebra:
    lam = Fraction(lam)
    beta = [[1, 0, 0], [0, lam, 0], [0, 0, lam * lam]]
    return yau(perfect_with_center(), beta, "perfect-center-yau-%s" % lam)


def dsum(a1: HomAlgebra, a2: HomAlgebra) -> HomAlgebra:
    return validated(direct_sum(a1, a2))


def named_corpus() -> dict[str, HomAlgebra]:
    """The fixed corpus, keyed by name (insertion order is stable)."""
    algs = [
        abelian(2),
        abelian(2, [[1, 1], [0, 1]], name="abelian-2-jordan-block"),
        unital_one(),
        dual_numbers(),
        dual_yau(2),
        dual_yau(3),
        symmetric_jordan_2x2(),
        sym2_rotated(),
        truncated_polynomials(3),
        poly_yau(3, 2),
        plus_algebra(identity(2), "plus-id-2").with_flags(asserted_simple=True),
        plus_algebra([[1, 0], [0, 2]], "plus-diag-1-2"),
        plus_algebra([[1, 0], [0, 0]], "plus-diag-1-0"),
        dsum(unital_one(), unital_one()),
        dsum(dual_numbers(), unital_one()),
        dsum(unital_one(), abelian(1)),
        dsum(dual_numbers(), dual_numbers()),
        dsum(dual_yau(2), unital_one()),
        perfect_with_center(),
        perfect_center_yau(2),
    ]
    out = {}
    for a in algs:
        if a.name in out:
            raise ValueError("duplicate corpus name %s" % a.name)
        out[a.name] = a
    return out


def random_yau(seed: int) -> list[HomAlgebra]:
    """Yau twists with seeded random rational scalars."""
    rng = random.Random(seed)
    out = []
    for _ in range(2):
        lam = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        if lam == 1:
            lam = Fraction(5, 2)
        out.append(dual_yau(lam))
    lam = Fraction(rng.choice([-3, -2, 2, 3, 4]))
    out.append(poly_yau(3, lam))
    return [replace(a, name="seed%d-%s" % (seed, a.name)) for a in out]
