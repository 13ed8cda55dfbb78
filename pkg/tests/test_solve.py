from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homjordan.corpus import abelian, dual_numbers, dual_yau, random_yau, unital_one
from homjordan.exactlin import Subspace, identity, mat_scale, span
from homjordan.solve import (
    KINDS, Spaces, aggregate, c_k, commutant, der_k, find_companions, gder_k, identity_defect,
    member_defect, nu, nu_prime, qc_k, qder_k, sigma, solve_kind, zder_k,
)
from oracles import brute_force_space, satisfies

F = Fraction


# -- hand computations ----------------------------------------------------------------------

def test_commutant_dimensions():
    assert commutant(abelian(2)).dim == 4
    assert commutant(abelian(2, [[1, 0], [0, 2]])).dim == 2
    assert commutant(abelian(2, [[1, 1], [0, 1]])).dim == 2


@pytest.mark.parametrize("k", range(3))
def test_abelian_everything_is_the_commutant(k):
    a = abelian(2)
    for kind in KINDS:
        assert solve_kind(a, kind, k).space == Subspace.full(4)


def test_unital_line_hand_values():
    # mu(e, e) = e: der needs d = 2d, quasiderivations need d' = 2d,
    # generalized ones d'' = d + d', centroid and quasicentroid are the scalars
    a = unital_one()
    dims = {kind: solve_kind(a, kind, 0).dim for kind in KINDS}
    assert dims == {"der": 0, "gder": 1, "qder": 1, "c": 1, "qc": 1, "zder": 0}


def test_unital_line_witnesses():
    a = unital_one()
    q, pairs = qder_k(a, 0)
    assert len(pairs) == 1
    (D, D1), = pairs
    assert D1[0][0] == 2 * D[0][0]
    g, w = gder_k(a, 0)
    for d, d1, d2 in w.triples(1):
        assert d2[0][0] == d[0][0] + d1[0][0]


def test_dual_numbers_derivations():
    d = der_k(dual_numbers(), 0)
    assert d.dim == 1
    assert d.space == span(4, [[0, 0, 0, 1]])  # e -> 0, f -> f


def test_definitional_inclusions():
    for a in (dual_numbers(), dual_yau(2), unital_one()):
        for k in range(3):
            g = gder_k(a, k)[0].space
            assert g.contains_space(der_k(a, k).space)
            assert g.contains_space(c_k(a, k).space)
            assert qder_k(a, k)[0].space.contains_space(der_k(a, k).space)
            assert qc_k(a, k).space.contains_space(c_k(a, k).space)
            assert c_k(a, k).space.contains_space(zder_k(a, k).space)


def test_identity_in_centroid_of_multiplicative_algebras(corpus):
    for a in corpus.values():
        if a.flags.multiplicative_checked:
            assert c_k(a, 0).contains(identity(a.n)), a.name


# -- aggregates ------------------------------------------------------------------------------

def test_aggregate_with_identity_twist():
    agg = aggregate(dual_numbers(), "qder", 2)
    assert len({s.space for s in agg.per_k}) == 1
    assert agg.total == agg.per_k[0].space
    assert agg.direct is False
    zero = aggregate(unital_one(), "der", 3)
    assert zero.total.dim == 0 and zero.direct is True


def test_aggregate_generators_satisfy_their_identity():
    a = dual_yau(2)
    sp = Spaces(a)
    agg = sp.aggregate("gder", 2)
    assert [s.dim for s in agg.per_k] == [sp.get("gder", k).dim for k in range(3)]
    for k in range(3):
        for triple in gder_k(a, k)[1].triples(a.n):
            assert satisfies(a, "gder", k, triple)
    rep = agg.report()
    assert rep["max_power"] == 2 and rep["total_dim"] == agg.total.dim


def test_negative_power_rejected():
    with pytest.raises(ValueError):
        Spaces(unital_one()).aggregate("c", -1)
    with pytest.raises(ValueError):
        solve_kind(unital_one(), "nope", 0)


# -- operator products ---------------------------------------------------------------------

def test_operator_products():
    d = ((F(1), F(2)), (F(3), F(4)))
    assert nu_prime(d, d) == ((0, 0), (0, 0))
    assert nu(identity(2), identity(2)) == mat_scale(2, identity(2))
    assert sigma(dual_numbers(), d) == d
    with pytest.raises(ValueError):
        nu(identity(2), identity(3))


# -- direct re-evaluation ---------------------------------------------------------------------

def test_member_defect_agrees_with_solver():
    a = dual_yau(3)
    sp = Spaces(a)
    for kind in KINDS:
        for k in range(3):
            for op in sp.get(kind, k).operators():
                assert member_defect(a, kind, k, op) is None
    bad = ((F(1), F(0)), (F(0), F(0)))
    assert member_defect(a, "der", 0, bad) is not None
    assert identity_defect(a, "der", 0, (bad,))["reason"] == "identity fails"


def test_find_companions_returns_a_valid_partner():
    a = dual_numbers()
    D = identity(2)
    comp = find_companions(a, "qder", 0, D)
    assert comp is not None
    assert identity_defect(a, "qder", 0, (D,) + comp) is None


def test_report_shape():
    rep = c_k(unital_one(), 0).report()
    assert rep == {"kind": "c", "k": 0, "dim": 1, "basis": [["1"]]}


# -- independent brute-force assembly -------------------------------------------------------

@pytest.mark.parametrize("kind", KINDS)
def test_brute_force_matches_on_dual_yau(kind):
    a = dual_yau(2)
    for k in range(3):
        assert solve_kind(a, kind, k).space.basis == brute_force_space(a, kind, k)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(KINDS), st.integers(0, 3))
def test_brute_force_matches_on_random_twists(seed, kind, k):
    for a in random_yau(seed):
        assert solve_kind(a, kind, k).space.basis == brute_force_space(a, kind, k)
