"""Structural identities between the operator spaces, checked on concrete algebras.

Every check produces a :class:`Verdict`.  Inclusions are checked on basis
generators (all maps involved are bilinear) for powers ``k + s <= K``.  When an
inclusion fails, the offending operator is re-evaluated against the defining
identities from scratch and the outcome is attached as the counterexample.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    HomAlgebra, centralizer, check_hom_jordan, check_multiplicative, direct_sum,
    multiply, summand_subspaces,
)
from .exactlin import (
    Subspace, flatten, fstr, is_invertible, mat_add, mat_mul, mat_scale, mat_sub,
    transpose, unflatten, unit,
)
from .solve import Spaces, member_defect, nu, nu_prime, sigma

HOLDS = "holds"
FAILS = "fails"
NOT_APPLICABLE = "not_applicable"


@dataclass
class Verdict:
    claim: str
    status: str
    preconditions_met: bool = True
    reason: str = ""
    bound: int | None = None
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def failed(self) -> bool:
        return self.status == FAILS

    def to_dict(self) -> dict:
        return {"claim": self.claim, "status": self.status,
                "preconditions_met": self.preconditions_met, "reason": self.reason,
                "bound": self.bound, "counterexample": self.counterexample,
                "details": self.details}


def mat_json(m) -> list:
    return [[fstr(x) for x in row] for row in m]


def not_applicable(claim: str, reason: str, K: int | None = None, **details) -> Verdict:
    return Verdict(claim, NOT_APPLICABLE, False, reason, K, None, dict(details))


def conclude(claim: str, cx: dict | None, K: int | None, reason_ok: str = "",
             **details) -> Verdict:
    if cx is None:
        return Verdict(claim, HOLDS, True, reason_ok, K, None, dict(details))
    return Verdict(claim, FAILS, True, cx.get("what", "check failed"), K, cx, dict(details))


def gated(claim: str, K: int, reasons: list, run, force: bool = False) -> Verdict:
    """Evaluate ``run()`` only when ``reasons`` is empty (or when forced).

    A forced evaluation with unmet preconditions is still reported as not
    applicable; its outcome is kept under ``details["forced_outcome"]``.
    """
    if not reasons:
        return run()
    v = not_applicable(claim, "; ".join(reasons), K)
    if force:
        inner = run()
        v.details["forced_outcome"] = inner.to_dict()
    return v


def section3_gate(a: HomAlgebra) -> list:
    return [] if check_multiplicative(a) else ["algebra is not multiplicative"]


# -- membership helpers -------------------------------------------------------------

def membership_counterexample(sp: Spaces, op, kind: str, k: int, what: str, **ctx) -> dict:
    defect = member_defect(sp.a, kind, k, op)
    cx = {"what": what, "kind": kind, "k": k, "operator": mat_json(op), "defect": defect}
    cx.update(ctx)
    if defect is None:
        cx["note"] = "direct evaluation accepts the operator; solver and evaluator disagree"
    return cx


def first_nonmember(sp: Spaces, candidates, kind: str, k: int, what: str) -> dict | None:
    """``candidates`` yields ``(operator, context)``; returns the first failure."""
    target = sp.get(kind, k)
    for op, ctx in candidates:
        if not target.contains(op):
            return membership_counterexample(sp, op, kind, k, what, **ctx)
    return None


def ops(sp: Spaces, kind: str, k: int) -> list:
    return sp.get(kind, k).operators()


def pairs(K: int):
    for k in range(K + 1):
        for s in range(K + 1 - k):
            yield k, s


def _binary(sp: Spaces, op, left: str, right: str, target: str, K: int, what: str) -> dict | None:
    for k, s in pairs(K):
        A = ops(sp, left, k)
        B = ops(sp, right, s)
        cands = ((op(d1, d2), {"s": s, "generators": [i, j]})
                 for i, d1 in enumerate(A) for j, d2 in enumerate(B))
        cx = first_nonmember(sp, cands, target, k + s, what % {"k": k, "s": s})
        if cx:
            cx["k_left"], cx["k_right"] = k, s
            return cx
    return None


def _sigma_closed(sp: Spaces, kind: str, K: int, what: str) -> dict | None:
    for k in range(K):
        cands = ((sigma(sp.a, d), {"generator": i}) for i, d in enumerate(ops(sp, kind, k)))
        cx = first_nonmember(sp, cands, kind, k + 1, what % {"k": k, "k1": k + 1})
        if cx:
            return cx
    return None


def _spaces(a: HomAlgebra, sp: Spaces | None) -> Spaces:
    return sp if sp is not None else Spaces(a)


# -- subalgebra closure -----------------------------------------------------------------

def verify_prop31(a: HomAlgebra, K: int = 3, sp: Spaces | None = None,
                  force: bool = False) -> list[Verdict]:
    sp = _spaces(a, sp)
    gate = section3_gate(a)
    out = []
    for kind in ("gder", "qder", "c"):
        def run(kind=kind):
            cx = _sigma_closed(sp, kind, K, "sigma(%s_%%(k)s) not in %s_%%(k1)s" % (kind, kind))
            cx = cx or _binary(sp, nu_prime, kind, kind, kind, K,
                               "commutator of %s_%%(k)s and %s_%%(s)s leaves %s" % (kind, kind, kind))
            return conclude("prop31.%s_subalgebra" % kind, cx, K)
        out.append(gated("prop31.%s_subalgebra" % kind, K, gate, run, force))

    def run_z():
        cx = _sigma_closed(sp, "zder", K, "sigma(zder_%(k)s) not in zder_%(k1)s")
        cx = cx or _binary(sp, nu_prime, "zder", "der", "zder", K,
                           "commutator of zder_%(k)s and der_%(s)s leaves zder")
        return conclude("prop31.zder_ideal_of_der", cx, K)
    out.append(gated("prop31.zder_ideal_of_der", K, gate, run_z, force))
    return out


def _compose(d1, d2):
    return mat_mul(d1, d2)


def verify_prop32(a: HomAlgebra, K: int = 3, sp: Spaces | None = None,
                  force: bool = False) -> list[Verdict]:
    sp = _spaces(a, sp)
    gate = section3_gate(a)
    brackets = [
        ("prop32.1_der_c", nu_prime, "der", "c", "c"),
        ("prop32.2_qder_qc", nu_prime, "qder", "qc", "qc"),
        ("prop32.3_qc_qc", nu_prime, "qc", "qc", "qder"),
        ("prop32.6_c_compose_der", _compose, "c", "der", "der"),
    ]
    out = []
    for claim, op, left, right, target in brackets:
        def run(claim=claim, op=op, left=left, right=right, target=target):
            cx = _binary(sp, op, left, right, target, K,
                         "%s_%%(k)s with %s_%%(s)s leaves %s" % (left, right, target))
            return conclude(claim, cx, K)
        out.append(gated(claim, K, gate, run, force))

    def run4():
        for k in range(K + 1):
            cands = ((d, {"generator": i}) for i, d in enumerate(ops(sp, "c", k)))
            cx = first_nonmember(sp, cands, "qder", k, "centroid element is not a quasiderivation")
            if cx:
                return conclude("prop32.4_c_in_qder", cx, K)
        return conclude("prop32.4_c_in_qder", None, K)

    def run5():
        for k in range(K + 1):
            cands = [(d, {"from": "qder", "generator": i}) for i, d in enumerate(ops(sp, "qder", k))]
            cands += [(d, {"from": "qc", "generator": i}) for i, d in enumerate(ops(sp, "qc", k))]
            cx = first_nonmember(sp, cands, "gder", k, "summand is not a generalized derivation")
            if cx:
                return conclude("prop32.5_qder_plus_qc_in_gder", cx, K)
        return conclude("prop32.5_qder_plus_qc_in_gder", None, K)

    out.insert(3, gated("prop32.4_c_in_qder", K, gate, run4, force))
    out.insert(4, gated("prop32.5_qder_plus_qc_in_gder", K, gate, run5, force))
    return out


# -- equalities ---------------------------------------------------------------------------

def verify_thm33(a: HomAlgebra, K: int = 3, sp: Spaces | None = None,
                 force: bool = False) -> Verdict:
    """GDer_k equals QDer_k + QC_k, including the explicit split of each witness."""
    sp = _spaces(a, sp)
    claim = "thm33.gder_eq_qder_plus_qc"
    half = Fraction(1, 2)

    def run():
        dims = []
        for k in range(K + 1):
            g = sp.get("gder", k)
            total = sp.get("qder", k).space + sp.get("qc", k).space
            dims.append({"k": k, "gder": g.dim, "sum": total.dim})
            for idx, (D, D1, _) in enumerate(_triples(g)):
                plus = mat_scale(half, mat_add(D, D1))
                minus = mat_scale(half, mat_sub(D, D1))
                for part, kind in ((plus, "qder"), (minus, "qc")):
                    if not sp.get(kind, k).contains(part):
                        cx = membership_counterexample(
                            sp, part, kind, k, "half of a generalized derivation leaves %s" % kind,
                            witness=idx, witness_ops=[mat_json(D), mat_json(D1)])
                        return conclude(claim, cx, K, per_k=dims)
                if not g.contains(D1):
                    cx = membership_counterexample(sp, D1, "gder", k,
                                                   "companion map is not a generalized derivation",
                                                   witness=idx)
                    return conclude(claim, cx, K, per_k=dims)
            for kind in ("qder", "qc"):
                cands = ((d, {"from": kind, "generator": i})
                         for i, d in enumerate(sp.get(kind, k).operators()))
                cx = first_nonmember(sp, cands, "gder", k, "%s generator outside gder" % kind)
                if cx:
                    return conclude(claim, cx, K, per_k=dims)
            if g.space != total:
                # unreachable when both inclusions above passed; kept as a guard
                return conclude(claim, {"what": "subspaces differ", "k": k}, K, per_k=dims)
        return conclude(claim, None, K, per_k=dims)

    return gated(claim, K, section3_gate(a), run, force)


def _triples(g):
    n = g.algebra.n
    m = n * n
    if g.witness is None:
        return []
    return [tuple(unflatten(b[t * m:(t + 1) * m], n) for t in range(3)) for b in g.witness.basis]


def verify_thm36(a: HomAlgebra, K: int = 3, sp: Spaces | None = None,
                 force: bool = False) -> Verdict:
    sp = _spaces(a, sp)
    claim = "thm36.zder_eq_c_cap_der"

    def run():
        dims = []
        for k in range(K + 1):
            z = sp.get("zder", k)
            inter = sp.get("c", k).space & sp.get("der", k).space
            dims.append({"k": k, "zder": z.dim, "c_cap_der": inter.dim})
            for kind in ("c", "der"):
                cands = ((d, {"generator": i}) for i, d in enumerate(z.operators()))
                cx = first_nonmember(sp, cands, kind, k, "central derivation outside %s" % kind)
                if cx:
                    return conclude(claim, cx, K, per_k=dims)
            for i, b in enumerate(inter.basis):
                op = unflatten(b, a.n)
                if not z.contains(op):
                    cx = membership_counterexample(sp, op, "zder", k,
                                                   "element of C and Der is not central",
                                                   generator=i)
                    return conclude(claim, cx, K, per_k=dims)
        return conclude(claim, None, K, per_k=dims)

    return gated(claim, K, section3_gate(a), run, force)


def verify_thm35(a: HomAlgebra, K: int = 3, sp: Spaces | None = None,
                 force: bool = False) -> Verdict:
    """Commutators of centroid and quasicentroid elements map V into Z(V)."""
    sp = _spaces(a, sp)
    claim = "thm35.bracket_c_qc_into_center"
    gate = section3_gate(a)
    if not is_invertible(a.alpha):
        gate = gate + ["twist map is not invertible"]
    Z = centralizer(a)

    def run():
        for k, s in pairs(K):
            for i, d1 in enumerate(ops(sp, "c", k)):
                for j, d2 in enumerate(ops(sp, "qc", s)):
                    br = nu_prime(d1, d2)
                    for col_idx, col in enumerate(transpose(br) if a.n else ()):
                        if not Z.contains(col):
                            witness = next(y for y in range(a.n)
                                           if any(multiply(a, col, unit(a.n, y))))
                            cx = {"what": "commutator image leaves the centralizer",
                                  "k": k, "s": s, "generators": [i, j],
                                  "operator": mat_json(br), "basis_vector": col_idx,
                                  "image": [fstr(x) for x in col],
                                  "nonzero_product_with": witness}
                            return conclude(claim, cx, K)
        return conclude(claim, None, K, centralizer_dim=Z.dim,
                        bracket_vanishes_claimed=Z.dim == 0)

    return gated(claim, K, gate, run, force)


# -- the quasicentroid as a Hom-Jordan algebra ----------------------------------------------

def operator_closure(space: Subspace, n: int, alpha, use_nu: bool = True) -> Subspace:
    """Smallest subspace containing ``space`` closed under ``nu`` and ``alpha o -``."""
    s = space
    while True:
        mats = [unflatten(b, n) for b in s.basis]
        new = [flatten(mat_mul(alpha, d)) for d in mats]
        if use_nu:
            new += [flatten(nu(d1, d2)) for i, d1 in enumerate(mats) for d2 in mats[i:]]
        nxt = Subspace(s.ambient_dim, list(s.basis) + new)
        if nxt.dim == s.dim:
            return s
        s = nxt


def operator_algebra(space: Subspace, n: int, alpha, name: str = "") -> HomAlgebra:
    """``(space, nu, sigma)`` in the canonical basis of a closed operator space."""
    basis = [unflatten(b, n) for b in space.basis]
    d = len(basis)
    mu = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            mu[i][j] = mu[j][i] = space.coordinates(flatten(nu(basis[i], basis[j])))
    tw = transpose([space.coordinates(flatten(mat_mul(alpha, b))) for b in basis]) if d else ()
    return HomAlgebra(d, mu, tw, name=name)


def verify_thm37(a: HomAlgebra, K: int = 3, sp: Spaces | None = None,
                 force: bool = False) -> Verdict:
    sp = _spaces(a, sp)
    claim = "thm37.qc_hom_jordan"

    def run():
        cx = _sigma_closed(sp, "qc", K, "sigma(qc_%(k)s) not in qc_%(k1)s")
        cx = cx or _binary(sp, nu, "qc", "qc", "qc", K,
                           "anticommutator of qc_%(k)s and qc_%(s)s leaves qc")
        if cx:
            return conclude(claim, cx, K)
        total = sp.aggregate("qc", K).total
        closed = operator_closure(total, a.n, a.alpha)
        alg = operator_algebra(closed, a.n, a.alpha, name="qc(%s)" % a.name)
        rep = check_hom_jordan(alg)
        details = {"total_dim": total.dim, "closure_dim": closed.dim,
                   "total_closed": closed.dim == total.dim}
        if not rep.ok:
            return conclude(claim, {"what": "induced algebra fails the Hom-Jordan identity",
                                    "failing_tuple": list(rep.failing_tuple)}, K, **details)
        return conclude(claim, None, K, **details)

    return gated(claim, K, section3_gate(a), run, force)


def verify_thm38(a: HomAlgebra, K: int = 3, sp: Spaces | None = None,
                 force: bool = False) -> list[Verdict]:
    sp = _spaces(a, sp)
    gate = section3_gate(a)
    cache = {}

    def flags():
        if not cache:
            A = B = C = True
            for k, s in pairs(K):
                target = sp.get("qc", k + s)
                for d1 in ops(sp, "qc", k):
                    for d2 in ops(sp, "qc", s):
                        br = nu_prime(d1, d2)
                        A = A and target.contains(br)
                        B = B and target.contains(mat_mul(d1, d2))
                        C = C and not any(any(r) for r in br)
            cache.update(A=A, B=B, C=C)
        return cache

    def run1():
        f = flags()
        cx = None if f["A"] == f["B"] else {
            "what": "commutator closure and composition closure disagree", **f}
        return conclude("thm38.1_lie_iff_associative", cx, K, **f)

    def run2():
        f = flags()
        cx = None if f["A"] == f["C"] else {
            "what": "commutator closure and vanishing commutators disagree", **f}
        return conclude("thm38.2_lie_iff_abelian", cx, K, **f)

    out = [gated("thm38.1_lie_iff_associative", K, gate, run1, force)]
    gate2 = list(gate)
    if not is_invertible(a.alpha):
        gate2.append("twist map is not invertible")
    if centralizer(a).dim:
        gate2.append("centralizer is nonzero")
    out.append(gated("thm38.2_lie_iff_abelian", K, gate2, run2, force))
    return out


# -- direct sums ------------------------------------------------------------------------------

def embed_operator(d, offset: int, n: int) -> tuple:
    """Extend ``d`` by zero to an ``n``-dimensional space, placed at ``offset``."""
    m = len(d)
    out = [[0] * n for _ in range(n)]
    for r in range(m):
        for c in range(m):
            out[offset + r][offset + c] = d[r][c]
    return tuple(tuple(Fraction(x) for x in row) for row in out)


def embed_space(space: Subspace, m: int, offset: int, n: int) -> Subspace:
    return Subspace(n * n, [flatten(embed_operator(unflatten(b, m), offset, n))
                            for b in space.basis])


def verify_prop34(a1: HomAlgebra, a2: HomAlgebra, K: int = 3,
                  force: bool = False) -> list[Verdict]:
    s = direct_sum(a1, a2)
    n1, n = a1.n, s.n
    v1, v2 = summand_subspaces(s)
    Z = centralizer(s)
    Zsum = Subspace(n, [tuple(z) + (0,) * a2.n for z in centralizer(a1).basis]
                    + [(0,) * n1 + tuple(z) for z in centralizer(a2).basis])
    out = []
    cx = None
    if Z != Zsum:
        extra = next((list(map(fstr, b)) for b in Z.basis if not Zsum.contains(b)), None)
        cx = {"what": "centralizer of the sum differs from the sum of centralizers",
              "dim_sum": Z.dim, "dim_parts": Zsum.dim, "vector": extra}
    out.append(conclude("prop34.1_centralizer", cx, K, dim=Z.dim))

    gate = section3_gate(s)
    if not is_invertible(s.alpha):
        gate.append("twist map is not invertible")
    if Z.dim:
        gate.append("centralizer is nonzero")
    sp, sp1, sp2 = Spaces(s), Spaces(a1), Spaces(a2)
    for label, kind in (("a", "der"), ("b", "gder"), ("c", "qder"), ("d", "c")):
        claim = "prop34.2%s_%s_decomposes" % (label, kind)

        def run(kind=kind, claim=claim):
            dims = []
            for k in range(K + 1):
                whole = sp.get(kind, k)
                parts = (embed_space(sp1.get(kind, k).space, n1, 0, n)
                         + embed_space(sp2.get(kind, k).space, a2.n, n1, n))
                dims.append({"k": k, "sum": whole.dim, "parts": parts.dim})
                for b in parts.basis:
                    op = unflatten(b, n)
                    if not whole.contains(op):
                        return conclude(claim, membership_counterexample(
                            sp, op, kind, k, "embedded summand map is not in the sum's space"),
                            K, per_k=dims)
                for op in whole.operators():
                    if not parts.contains(flatten(op)):
                        cx = _split_failure(op, n1, n, a1, a2, sp1, sp2, kind, k)
                        return conclude(claim, cx, K, per_k=dims)
            return conclude(claim, None, K, per_k=dims)
        out.append(gated(claim, K, gate, run, force))
    return out


def _split_failure(op, n1, n, a1, a2, sp1, sp2, kind, k) -> dict:
    off = [(r, c) for r in range(n) for c in range(n)
           if (r < n1) != (c < n1) and op[r][c]]
    cx = {"what": "map of the sum does not split along the summands", "kind": kind, "k": k,
          "operator": mat_json(op)}
    if off:
        cx["off_block_entry"] = list(off[0])
        return cx
    b1 = tuple(tuple(op[r][c] for c in range(n1)) for r in range(n1))
    b2 = tuple(tuple(op[r][c] for c in range(n1, n)) for r in range(n1, n))
    cx["block_defects"] = [member_defect(a1, kind, k, b1) if a1.n else None,
                           member_defect(a2, kind, k, b2) if a2.n else None]
    return cx


# -- suite ------------------------------------------------------------------------------------

def section3(a: HomAlgebra, K: int = 3, force: bool = False) -> list[Verdict]:
    """All single-algebra checks of this module, sharing one solver cache."""
    sp = Spaces(a)
    out = []
    out += verify_prop31(a, K, sp, force)
    out += verify_prop32(a, K, sp, force)
    out.append(verify_thm33(a, K, sp, force))
    if len(a.summands) == 2:
        out += verify_prop34(a.summands[0], a.summands[1], K, force)
    out.append(verify_thm35(a, K, sp, force))
    out.append(verify_thm36(a, K, sp, force))
    out.append(verify_thm37(a, K, sp, force))
    out += verify_thm38(a, K, sp, force)
    return out
