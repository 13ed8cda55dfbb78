"""The doubled algebra ``Vt + Vt^2`` and the embedding of quasiderivations.

Coordinates of the carrier are ordered with the ``t`` part first:
index ``i`` is ``e_i t`` and index ``n + i`` is ``e_i t^2``.  Products of
total degree three or more vanish, so the only nonzero products are
``mu(e_i t, e_j t) = mu(e_i, e_j) t^2``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    HomAlgebra, centralizer, check_hom_jordan, check_multiplicative, square, validated,
)
from .exactlin import (
    ZERO, Subspace, block_diag, flatten, is_invertible, mat_mul, projection,
)
from .solve import Spaces, identity_defect, witness_pairs
from .theorems import (
    Verdict, conclude, gated, mat_json, membership_counterexample,
)


class InvalidWitness(ValueError):
    pass


@dataclass(frozen=True)
class ExtendedAlgebra:
    base: HomAlgebra
    carrier: HomAlgebra
    u_complement: Subspace
    square: Subspace
    # projection onto mu(V, V) along U, as an n x n matrix
    square_projection: tuple

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def u_invariant(self) -> bool:
        """Whether ``U`` and ``mu(V, V)`` are both stable under the twist map."""
        a = self.base.alpha
        return self.u_complement.is_invariant(a) and self.square.is_invariant(a)

    def t_part(self) -> Subspace:
        n = self.n
        return Subspace(2 * n, [tuple(1 if j == i else 0 for j in range(2 * n)) for i in range(n)])

    def t2_part(self) -> Subspace:
        n = self.n
        return Subspace(2 * n, [tuple(1 if j == n + i else 0 for j in range(2 * n))
                                for i in range(n)])


def extend_algebra(a: HomAlgebra) -> ExtendedAlgebra:
    n = a.n
    N = 2 * n
    mu = [[[ZERO] * N for _ in range(N)] for _ in range(N)]
    for i in range(n):
        for j in range(n):
            for k, c in enumerate(a.mu[i][j]):
                mu[i][j][n + k] = c
    carrier = validated(HomAlgebra(N, mu, block_diag(a.alpha, a.alpha),
                                   name="ext(%s)" % a.name))
    sq = square(a)
    U = sq.complement()
    P = projection(sq, U) if n else ()
    return ExtendedAlgebra(a, carrier, U, sq, P)


def phi(ext: ExtendedAlgebra, witness, k: int | None = None) -> tuple:
    """Matrix of ``phi(D)`` on the carrier for a quasiderivation witness ``(D, D')``.

    With ``k`` given, the witness is first checked against the defining identity.
    """
    D, D1 = witness
    if k is not None and identity_defect(ext.base, "qder", k, (D, D1)) is not None:
        raise InvalidWitness("(D, D') is not a quasiderivation pair at power %d" % k)
    if ext.n == 0:
        return ()
    return block_diag(D, mat_mul(D1, ext.square_projection))


def _phi_gate(ext: ExtendedAlgebra) -> list:
    if ext.u_invariant:
        return []
    return ["complement U of mu(V,V) or mu(V,V) itself is not stable under the twist map"]


def phi_image(ext: ExtendedAlgebra, sp: Spaces, k: int) -> tuple[Subspace, list]:
    """``phi(QDer_k)`` together with the images of every witness pair."""
    pairs = witness_pairs(sp.get("qder", k))
    images = [phi(ext, w) for w in pairs]
    N = 2 * ext.n
    return Subspace(N * N, [flatten(m) for m in images]), images


def verify_prop41(a: HomAlgebra, ext: ExtendedAlgebra | None = None) -> Verdict:
    ext = ext or extend_algebra(a)
    rep = check_hom_jordan(ext.carrier)
    cx = None if rep.ok else {"what": "carrier fails the Hom-Jordan identity",
                              "failing_tuple": list(rep.failing_tuple)}
    return conclude("prop41.carrier_hom_jordan", cx, None, dim=ext.carrier.n,
                    multiplicative=check_multiplicative(ext.carrier))


def verify_prop42(a: HomAlgebra, K: int = 3, ext: ExtendedAlgebra | None = None,
                  sp: Spaces | None = None, esp: Spaces | None = None,
                  force: bool = False) -> Verdict:
    """phi maps quasiderivations into derivations of the carrier, injectively."""
    ext = ext or extend_algebra(a)
    sp = sp or Spaces(a)
    esp = esp or Spaces(ext.carrier)
    claim = "prop42.phi_into_der"

    def run():
        per_k = []
        for k in range(K + 1):
            q = sp.get("qder", k)
            img, images = phi_image(ext, sp, k)
            per_k.append({"k": k, "qder": q.dim, "phi_rank": img.dim})
            target = esp.get("der", k)
            for idx, m in enumerate(images):
                if not target.contains(m):
                    return conclude(claim, membership_counterexample(
                        esp, m, "der", k, "image of a quasiderivation is not a derivation",
                        witness=idx), K, per_k=per_k)
            # rank of phi on the witness space equals dim QDer_k exactly when phi is
            # injective on QDer_k and ignores the choice of D'
            if img.dim != q.dim:
                bad = _dependence_witness(ext, sp, k)
                return conclude(claim, {"what": "phi is not well defined or not injective",
                                        "k": k, "qder_dim": q.dim, "rank": img.dim,
                                        **(bad or {})}, K, per_k=per_k)
        return conclude(claim, None, K, per_k=per_k)

    return gated(claim, K, _phi_gate(ext), run, force)


def _dependence_witness(ext, sp, k):
    """A witness pair with ``D = 0`` whose image is nonzero, if any."""
    n = ext.n
    for D, D1 in witness_pairs(sp.get("qder", k)):
        if not any(any(r) for r in D):
            m = phi(ext, (D, D1))
            if any(any(r) for r in m):
                return {"companion": mat_json(D1), "image": mat_json(m)}
    return {"n": n}


def verify_prop43(a: HomAlgebra, K: int = 3, ext: ExtendedAlgebra | None = None,
                  sp: Spaces | None = None, esp: Spaces | None = None,
                  force: bool = False) -> list[Verdict]:
    ext = ext or extend_algebra(a)
    sp = sp or Spaces(a)
    esp = esp or Spaces(ext.carrier)
    gate = []
    if centralizer(a).dim:
        gate.append("centralizer is nonzero")
    if not is_invertible(a.alpha):
        gate.append("twist map is not invertible")

    def run_center():
        Z = centralizer(ext.carrier)
        cx = None if Z == ext.t2_part() else {
            "what": "centralizer of the carrier differs from V t^2", "dim": Z.dim}
        return conclude("prop43.center_is_vt2", cx, None, dim=Z.dim)

    def run_split():
        claim = "prop43.der_splits"
        per_k = []
        N = 2 * ext.n
        phi_total = Subspace(N * N)
        for k in range(K + 1):
            d = esp.get("der", k).space
            z = esp.get("zder", k).space
            p, _ = phi_image(ext, sp, k)
            phi_total = phi_total + p
            per_k.append({"k": k, "der": d.dim, "phi": p.dim, "zder": z.dim})
            cx = _split_check(d, p, z, k, N)
            if cx:
                return conclude(claim, cx, K, per_k=per_k)
        agg_d = esp.aggregate("der", K).total
        agg_z = esp.aggregate("zder", K).total
        cx = _split_check(agg_d, phi_total, agg_z, "total", N)
        return conclude(claim, cx, K, per_k=per_k,
                        total={"der": agg_d.dim, "phi": phi_total.dim, "zder": agg_z.dim})

    return [gated("prop43.center_is_vt2", K, gate, run_center, force),
            gated("prop43.der_splits", K, gate + _phi_gate(ext), run_split, force)]


def _split_check(d: Subspace, p: Subspace, z: Subspace, k, n: int) -> dict | None:
    both = p + z
    if both != d:
        extra = next((b for b in d.basis if not both.contains(b)), None)
        where = "derivation outside phi(QDer) + ZDer"
        if extra is None:
            extra = next(b for b in both.basis if not d.contains(b))
            where = "element of phi(QDer) + ZDer that is not a derivation"
        return {"what": where, "k": k, "operator": mat_json(_square(extra, n))}
    inter = p & z
    if inter.dim:
        return {"what": "phi(QDer) and ZDer intersect", "k": k,
                "operator": mat_json(_square(inter.basis[0], n))}
    return None


def _square(v, n):
    return tuple(tuple(v[r * n:(r + 1) * n]) for r in range(n)) if n else ()


def section4(a: HomAlgebra, K: int = 3, force: bool = False) -> list[Verdict]:
    ext = extend_algebra(a)
    sp, esp = Spaces(a), Spaces(ext.carrier)
    return ([verify_prop41(a, ext), verify_prop42(a, K, ext, sp, esp, force)]
            + verify_prop43(a, K, ext, sp, esp, force))

