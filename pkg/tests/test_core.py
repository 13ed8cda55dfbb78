import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homjordan.core import (
    AlgebraError, HomAlgebra, L_operator, MorphismError, NotAnIdeal, algebra, centralizer,
    check_commutative, check_hom_jordan, check_multiplicative, commutant_plus_algebra,
    commutativity_failure, commuting_operators, direct_sum, ideal_closure, invariant_forms,
    is_hom_ideal, is_hom_subalgebra, is_perfect, multiplicativity_failure, multiply,
    quotient, simplicity_evidence, square, validated, yau_twist,
)
from homjordan.corpus import (
    abelian, dual_numbers, dual_yau, perfect_with_center, symmetric_jordan_2x2, unital_one,
)
from homjordan.exactlin import Subspace, identity, mat_mul, span
from oracles import matvec, mul

F = Fraction
E, FF = (1, 0), (0, 1)


def rand_vec(rng, n):
    return tuple(F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n))


def hom_jordan_direct(a, x, y):
    """Both sides of the Hom-Jordan identity, evaluated without linearisation."""
    xx = mul(a, x, x)
    a1x = matvec(a.alpha, x)
    a2x = matvec(a.alpha, a1x)
    lhs = mul(a, a2x, mul(a, y, xx))
    rhs = mul(a, mul(a, a1x, y), matvec(a.alpha, xx))
    return lhs, rhs


# -- products ------------------------------------------------------------------------------

def test_products_on_small_algebras():
    assert multiply(abelian(2), (1, 2), (3, 4)) == (0, 0)
    assert multiply(unital_one(), (1,), (1,)) == (1,)
    assert multiply(dual_numbers(), (1, 1), (1, 1)) == (1, 2)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_multiply_matches_bilinear_expansion(x, y):
    a = symmetric_jordan_2x2()
    assert list(multiply(a, x, y)) == mul(a, [F(t) for t in x], [F(t) for t in y])


def test_wrong_length_vector_rejected():
    with pytest.raises(AlgebraError):
        multiply(dual_numbers(), (1,), (1, 0))


def test_bad_shapes_rejected():
    with pytest.raises(AlgebraError):
        HomAlgebra(2, [[[0, 0]]], identity(2))
    with pytest.raises(AlgebraError):
        HomAlgebra(1, [[[1]]], identity(2))


# -- defining checks -----------------------------------------------------------------------

def test_commutativity_failure_names_pair():
    a = algebra(2, {(0, 1): {0: 1}}, symmetric=False)
    assert not check_commutative(a)
    assert commutativity_failure(a) == (0, 1)
    with pytest.raises(AlgebraError):
        check_hom_jordan(a)


def test_multiplicativity_failure_first_pair():
    a = dual_numbers(alpha=[[1, 0], [1, 1]])  # alpha(e) = e + f, alpha(f) = f
    expected = None
    for i in range(2):
        for j in range(2):
            x = [F(int(t == i)) for t in range(2)]
            y = [F(int(t == j)) for t in range(2)]
            lhs = matvec(a.alpha, mul(a, x, y))
            rhs = mul(a, matvec(a.alpha, x), matvec(a.alpha, y))
            if lhs != rhs and expected is None:
                expected = (i, j)
    assert expected == (0, 0)
    assert multiplicativity_failure(a) == expected
    assert not check_multiplicative(a)


def test_yau_twisted_dual_numbers_satisfy_identity_on_random_pairs():
    a = dual_yau(3)
    assert check_hom_jordan(a).ok and check_multiplicative(a)
    rng = random.Random(11)
    for _ in range(200):
        lhs, rhs = hom_jordan_direct(a, rand_vec(rng, 2), rand_vec(rng, 2))
        assert lhs == rhs


def test_identity_failure_detected_and_confirmed_directly():
    # e e = f, f f = e is commutative but not Jordan with alpha = id
    a = algebra(2, {(0, 0): {1: 1}, (1, 1): {0: 1}})
    rep = check_hom_jordan(a)
    assert not rep.ok and rep.failing_tuple is not None
    rng = random.Random(3)
    assert any(operator_ne(*hom_jordan_direct(a, rand_vec(rng, 2), rand_vec(rng, 2)))
               for _ in range(20))


def operator_ne(u, v):
    return u != v


@pytest.mark.parametrize("name", ["abelian-2", "unital-1", "dual-numbers", "sym2-jordan",
                                  "trunc-poly-3", "perfect-center"])
def test_alpha_identity_associative_or_jordan_algebras_pass(corpus, name):
    assert check_hom_jordan(corpus[name]).ok


def test_validated_records_flags():
    a = validated(dual_numbers(alpha=[[1, 0], [1, 1]]))
    assert a.flags.commutative_checked and not a.flags.multiplicative_checked


# -- left multiplication --------------------------------------------------------------------

def test_left_multiplication_operators():
    assert L_operator(abelian(2), (1, 1)) == ((0, 0), (0, 0))
    assert L_operator(unital_one(), (1,)) == ((1,),)
    assert L_operator(dual_numbers(), FF) == ((0, 0), (1, 0))


# -- attached subspaces -----------------------------------------------------------------

def test_centralizer_examples():
    assert centralizer(abelian(2)) == Subspace.full(2)
    assert centralizer(unital_one()).dim == 0
    assert centralizer(dual_numbers()).dim == 0
    assert centralizer(perfect_with_center()) == span(3, [[0, 0, 1]])


def test_square_and_perfect():
    assert square(abelian(2)).dim == 0 and not is_perfect(abelian(2))
    assert is_perfect(unital_one())
    assert square(dual_numbers()) == Subspace.full(2) and is_perfect(dual_numbers())
    assert is_perfect(perfect_with_center())


def test_ideals_and_subalgebras():
    a = dual_numbers()
    assert is_hom_ideal(a, Subspace.zero(2)) and is_hom_ideal(a, Subspace.full(2))
    assert is_hom_ideal(a, span(2, [FF]))
    assert is_hom_subalgebra(a, span(2, [E])) and not is_hom_ideal(a, span(2, [E]))


def test_ideal_closure_examples():
    a = dual_numbers()
    assert ideal_closure(a, Subspace.full(2)) == Subspace.full(2)
    assert ideal_closure(a, span(2, [FF])) == span(2, [FF])
    assert ideal_closure(a, span(2, [E])) == Subspace.full(2)


def test_simplicity_evidence():
    assert simplicity_evidence(symmetric_jordan_2x2())["passed"]
    assert not simplicity_evidence(dual_numbers())["passed"]
    assert not simplicity_evidence(abelian(1))["passed"]


# -- constructions --------------------------------------------------------------------------

def test_direct_sum_dimensions_and_center():
    s = direct_sum(abelian(2), abelian(3))
    assert s.n == 5 and centralizer(s) == Subspace.full(5)
    t = direct_sum(unital_one(), abelian(1))
    assert centralizer(t) == span(2, [[0, 1]])


def test_yau_twist():
    a = dual_numbers()
    assert yau_twist(a, identity(2)).mu == a.mu
    b = yau_twist(a, [[1, 0], [0, 2]])
    assert check_hom_jordan(b).ok and check_multiplicative(b)
    assert b.alpha != identity(2)
    with pytest.raises(MorphismError):
        yau_twist(a, [[1, 0], [1, 1]])


def test_commuting_operators_dimensions():
    assert commuting_operators(identity(2)).dim == 4
    assert commuting_operators([[1, 0], [0, 2]]).dim == 2
    assert commuting_operators([[1, 1], [0, 1]]).dim == 2


@pytest.mark.parametrize("alpha", [identity(2), [[1, 0], [0, 2]], [[1, 1], [0, 1]],
                                   [[1, 0], [0, 0]]])
def test_commutant_plus_algebras_are_hom_jordan(alpha):
    a = commutant_plus_algebra(alpha)
    assert check_hom_jordan(a).ok


def test_invariant_forms():
    assert len(invariant_forms(abelian(2))) == 4
    assert len(invariant_forms(unital_one())) == 1
    a = dual_numbers()
    forms = invariant_forms(a)
    assert forms
    basis = [(F(1), F(0)), (F(0), F(1))]
    for f in forms:
        for x in basis:
            for y in basis:
                for z in basis:
                    assert f(multiply(a, x, y), z) == f(x, multiply(a, y, z))


def test_quotients():
    a = dual_numbers()
    q0 = quotient(a, Subspace.zero(2))
    assert q0.target.mu == a.mu and q0.pi == identity(2)
    assert quotient(a, Subspace.full(2)).target.n == 0
    q = quotient(a, span(2, [FF]))
    assert q.target.n == 1 and q.target.mu == (((1,),),)
    assert q.project((3, 5)) == (3,)
    with pytest.raises(NotAnIdeal):
        quotient(a, span(2, [E]))


def test_quotient_pi_is_a_morphism():
    a = perfect_with_center()
    q = quotient(a, centralizer(a))
    for i in range(3):
        for j in range(3):
            x = tuple(int(t == i) for t in range(3))
            y = tuple(int(t == j) for t in range(3))
            assert q.project(multiply(a, x, y)) == multiply(q.target, q.project(x), q.project(y))
    assert mat_mul(q.pi, a.alpha) == mat_mul(q.target.alpha, q.pi)
