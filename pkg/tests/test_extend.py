from fractions import Fraction

import pytest

from homjordan.core import check_hom_jordan, check_multiplicative
from homjordan.corpus import abelian, dual_numbers, dual_yau, unital_one
from homjordan.exactlin import Subspace, block_diag, flatten, identity, zeros
from homjordan.extend import (
    InvalidWitness, extend_algebra, phi, section4, verify_prop41, verify_prop42, verify_prop43,
)
from homjordan.solve import MapSpace, Spaces
from homjordan.theorems import HOLDS, NOT_APPLICABLE
from oracles import basis_vec, canon, kernel_basis, mul

F = Fraction


def centralizer_oracle(a):
    """Vectors x with mu(x, e_j) = 0 for all j, by direct evaluation."""
    n = a.n
    cols = []
    for i in range(n):
        cols.append([c for j in range(n) for c in mul(a, basis_vec(n, i), basis_vec(n, j))])
    rows = [list(r) for r in zip(*cols)]
    return canon(kernel_basis(rows, n), n)


def test_carrier_shape():
    for a in (abelian(2), dual_numbers(), dual_yau(3)):
        ext = extend_algebra(a)
        assert ext.carrier.n == 2 * a.n
    assert not any(any(any(v) for v in r) for r in extend_algebra(abelian(2)).carrier.mu)


def test_dual_carrier_validates():
    c = extend_algebra(dual_numbers()).carrier
    assert c.n == 4 and check_hom_jordan(c).ok and check_multiplicative(c)


def test_products_land_in_t_squared():
    a = dual_numbers()
    c = extend_algebra(a).carrier
    assert c.mu[0][1] == (0, 0, 0, 1)
    assert c.mu[0][2] == (0, 0, 0, 0)


def test_phi_examples():
    ext = extend_algebra(dual_numbers())
    z = zeros(2, 2)
    assert phi(ext, (z, z)) == zeros(4, 4)
    ab = extend_algebra(abelian(2))
    D = ((F(1), F(2)), (F(3), F(4)))
    assert phi(ab, (D, identity(2))) == block_diag(D, zeros(2, 2))
    one = extend_algebra(unital_one())
    assert phi(one, (((F(3),),), ((F(6),),)), k=0) == ((3, 0), (0, 6))


def test_phi_rejects_non_witness():
    ext = extend_algebra(unital_one())
    with pytest.raises(InvalidWitness):
        phi(ext, (((F(1),),), ((F(1),),)), k=0)


def test_prop41_on_corpus(corpus):
    for a in corpus.values():
        assert verify_prop41(a).holds, a.name


@pytest.mark.parametrize("make", [lambda: abelian(2), dual_numbers, unital_one])
def test_prop42_examples(make):
    v = verify_prop42(make(), 2)
    assert v.holds
    assert all(d["qder"] == d["phi_rank"] for d in v.details["per_k"])


def test_prop42_detects_missing_carrier_derivations():
    a = dual_numbers()
    ext = extend_algebra(a)
    esp = _TamperedDer(ext.carrier)
    v = verify_prop42(a, 0, ext, Spaces(a), esp)
    assert v.failed and v.counterexample["kind"] == "der"


class _TamperedDer(Spaces):
    def get(self, kind, k):
        if kind == "der":
            return MapSpace("der", k, Subspace.zero(self.a.n ** 2), self.a)
        return super().get(kind, k)


@pytest.mark.parametrize("make", [dual_numbers, unital_one, lambda: dual_yau(2)])
def test_prop43_holds(make):
    a = make()
    center, split = verify_prop43(a, 2)
    assert center.holds and split.holds
    ext = extend_algebra(a)
    assert centralizer_oracle(ext.carrier) == ext.t2_part().basis


def test_prop43_split_is_recomputed():
    a = dual_numbers()
    ext = extend_algebra(a)
    sp, esp = Spaces(a), Spaces(ext.carrier)
    _, split = verify_prop43(a, 1, ext, sp, esp)
    for row in split.details["per_k"]:
        assert row["der"] == row["phi"] + row["zder"]


def test_prop43_gated_on_nonzero_center():
    center, split = verify_prop43(abelian(2), 1)
    assert center.status == NOT_APPLICABLE and split.status == NOT_APPLICABLE
    assert "centralizer" in center.reason


def test_u_invariance_in_corpus(corpus):
    for a in corpus.values():
        assert extend_algebra(a).u_invariant, a.name


def test_section4_on_corpus(corpus):
    for a in corpus.values():
        for v in section4(a, 2):
            assert v.status in (HOLDS, NOT_APPLICABLE), (a.name, v.claim)


def test_flatten_of_phi_has_carrier_size():
    ext = extend_algebra(dual_numbers())
    assert len(flatten(phi(ext, (identity(2), identity(2))))) == 16
