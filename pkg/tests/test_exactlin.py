from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homjordan.exactlin import (
    AmbientMismatch, Subspace, complement, frac, fstr, identity, inverse, is_direct,
    is_invertible, mat_mul, mat_vec, nullspace, projection, rank, rref, span,
    subspace_contains, subspace_eq, subspace_intersect, subspace_sum, unit,
)
from oracles import canon, full_pivot_rank, sympy_rref

F = Fraction

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(rationals) for _ in range(c)] for _ in range(r)]


@st.composite
def subspace_pairs(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    vecs = st.lists(st.lists(rationals, min_size=n, max_size=n), max_size=n + 1)
    return n, draw(vecs), draw(vecs)


# -- scalars -----------------------------------------------------------------------------

def test_fstr_omits_unit_denominator():
    assert fstr(F(3)) == "3"
    assert fstr(F(-6, 4)) == "-3/2"


def test_frac_rejects_floats():
    with pytest.raises(TypeError):
        frac(0.5)
    assert frac("2/6") == F(1, 3)


# -- rref / rank / nullspace ---------------------------------------------------------------

def test_rref_rank_one():
    rows, rk, piv = rref([[1, 2], [2, 4]])
    assert rows == ((1, 2),) and rk == 1 and piv == [0]


def test_rref_identity_and_zero():
    assert rref(identity(3))[0] == identity(3)
    assert rref(identity(3))[1] == 3
    rows, rk, piv = rref([[0, 0, 0], [0, 0, 0]])
    assert rows == () and rk == 0 and piv == []


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rref_matches_sympy_and_full_pivoting(m):
    ncols = len(m[0])
    rows, rk, piv = rref(m)
    assert rk == full_pivot_rank(m)
    expect_rows, expect_piv = sympy_rref(m, ncols)
    assert rows == expect_rows
    assert tuple(piv) == expect_piv


def test_nullspace_examples():
    assert nullspace([[1, 2], [2, 4]]) == span(2, [[-2, 1]])
    assert nullspace(identity(4)).dim == 0
    assert nullspace([[0, 0, 0]]) == Subspace.full(3)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_nullspace_kills_and_rank_nullity(m):
    ncols = len(m[0])
    ns = nullspace(m, ncols)
    for v in ns.basis:
        assert not any(mat_vec(m, v))
    assert ns.dim + full_pivot_rank(m) == ncols


def test_inverse_roundtrip():
    m = [[2, 1], [F(1, 3), 4]]
    assert mat_mul(m, inverse(m)) == identity(2)
    assert not is_invertible([[1, 2], [2, 4]])
    with pytest.raises(ZeroDivisionError):
        inverse([[1, 2], [2, 4]])


def test_rank_of_empty_columns():
    assert rank([[0], [0]]) == 0


# -- subspaces ------------------------------------------------------------------------------

def test_sum_examples():
    e1, e2 = span(2, [[1, 0]]), span(2, [[0, 1]])
    assert e1 + e2 == Subspace.full(2)
    s = span(3, [[1, 1, 0]])
    t = span(3, [[1, 1, 0], [0, 0, 1]])
    assert s + s == s
    assert subspace_sum(s, t) == t
    assert t.contains_space(s + t) and (s + t).contains_space(t)


def test_intersection_examples():
    s = span(2, [[3, 1]])
    assert s & s == s
    assert (span(2, [[1, 0]]) & span(2, [[0, 1]])).dim == 0
    assert subspace_intersect(Subspace.full(2), span(2, [[1, 1]])) == span(2, [[1, 1]])


def test_membership_and_equality():
    assert subspace_contains(span(2, [[1, 0]]), [1, 0])
    assert is_direct(span(2, [[1, 0]]), span(2, [[1, 1]]))
    assert subspace_eq(span(2, [[2, 0]]), span(2, [[1, 0]]))
    assert span(2, [[2, 0]]) != span(2, [[0, 1]])


def test_complement_examples():
    assert complement(Subspace.zero(2)) == Subspace.full(2)
    assert complement(Subspace.full(2)).dim == 0
    assert complement(span(2, [[1, 1]])) == span(2, [unit(2, 1)])


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        span(2, [[1, 0]]) + span(3, [[1, 0, 0]])
    with pytest.raises(AmbientMismatch):
        span(2, [[1, 0, 0]])


def test_coordinates_reconstruct():
    s = span(3, [[1, 2, 0], [0, 1, 1]])
    v = (F(2), F(7), F(3))
    c = s.coordinates(v)
    assert tuple(sum(ci * b[j] for ci, b in zip(c, s.basis)) for j in range(3)) == v
    with pytest.raises(ValueError):
        s.coordinates((1, 0, 0))


def test_projection_is_idempotent_with_correct_kernel():
    onto, along = span(2, [[1, 1]]), span(2, [[0, 1]])
    p = projection(onto, along)
    assert mat_mul(p, p) == p
    assert not any(mat_vec(p, (0, 1)))
    assert mat_vec(p, (1, 1)) == (1, 1)
    with pytest.raises(ValueError):
        projection(onto, onto)


@settings(max_examples=150, deadline=None)
@given(subspace_pairs())
def test_grassmann_identity(data):
    n, a, b = data
    s, t = Subspace(n, a), Subspace(n, b)
    assert (s + t).dim + (s & t).dim == s.dim + t.dim
    assert s.basis == canon(a, n)
    for v in (s & t).basis:
        assert s.contains(v) and t.contains(v)


@settings(max_examples=100, deadline=None)
@given(subspace_pairs())
def test_complement_is_direct_and_spanning(data):
    n, a, _ = data
    s = Subspace(n, a)
    c = s.complement()
    assert is_direct(s, c) and (s + c).dim == n
