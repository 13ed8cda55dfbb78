"""Centroid elements: idempotents and decompositions, invariant forms, quotients."""
from __future__ import annotations

from dataclasses import dataclass

from .core import (
    HomAlgebra, L_operator, QuotientMap, annihilator_of, basis_L, centralizer,
    check_multiplicative, commutant_constraints, invariant_forms, is_hom_ideal, is_perfect,
    multiply, product_subspace, quotient, simplicity_evidence, summand_subspaces,
)
from .exactlin import (
    Subspace, flatten, identity, is_invertible, kernel, mat_mul, mat_pow,
    mat_scale, mat_sub, mat_vec, projection, transpose, unflatten, unit,
)
from .solve import MapSpace, Spaces, identity_defect, member_defect
from .theorems import Verdict, conclude, gated, mat_json


class NotADecomposition(ValueError):
    pass


class NotAnIdempotent(ValueError):
    pass


class NotIdealPreserving(ValueError):
    pass


@dataclass(frozen=True)
class CentroidElement:
    matrix: tuple
    k: int


@dataclass(frozen=True)
class InducedMap:
    quotient: QuotientMap
    source_op: tuple
    induced_op: tuple


def _mult_gate(a: HomAlgebra) -> list:
    return [] if check_multiplicative(a) else ["algebra is not multiplicative"]


def _alpha_gate(a: HomAlgebra) -> list:
    return [] if is_invertible(a.alpha) else ["twist map is not invertible"]


# -- composition structure ------------------------------------------------------------------

def centroid_composition_table(a: HomAlgebra, K: int = 3, sp: Spaces | None = None) -> dict:
    """Compositions of the aggregated centroid basis, in that basis when possible."""
    sp = sp or Spaces(a)
    total = sp.aggregate("c", K).total
    basis = [unflatten(b, a.n) for b in total.basis]
    table = []
    closed = True
    for x in basis:
        row = []
        for y in basis:
            v = flatten(mat_mul(x, y))
            if total.contains(v):
                row.append([str(c) for c in total.coordinates(v)])
            else:
                row.append(None)
                closed = False
        table.append(row)
    graded = all(sp.get("c", k + s).contains(mat_mul(x, y))
                 for k in range(K + 1) for s in range(K + 1 - k)
                 for x in sp.get("c", k).operators() for y in sp.get("c", s).operators())
    return {"max_power": K, "dim": total.dim, "basis": [mat_json(b) for b in basis],
            "table": table, "closed": closed, "graded_closed": graded}


# -- idempotents and decompositions --------------------------------------------------------

def idempotent_from_decomposition(a: HomAlgebra, v1: Subspace, v2: Subspace) -> CentroidElement:
    """The projection onto ``v1`` along ``v2``.

    The reflection ``x1 + x2 -> x1 - x2`` squares to the identity, so the
    idempotent used here is ``(id + reflection) / 2``.
    """
    if not (is_hom_ideal(a, v1) and is_hom_ideal(a, v2)):
        raise NotADecomposition("both parts must be Hom-ideals")
    if v1.dim + v2.dim != a.n or (v1 & v2).dim:
        raise NotADecomposition("the parts do not form a direct sum of the whole space")
    e = projection(v1, v2) if a.n else ()
    if a.n and identity_defect(a, "c", 0, (e,)) is not None:
        raise NotADecomposition("projection is not a centroid element")
    if mat_mul(e, e) != e:
        raise NotADecomposition("projection is not idempotent")
    return CentroidElement(e, 0)


def reflection(e: CentroidElement) -> tuple:
    """``2e - id``: the map ``x1 + x2 -> x1 - x2`` attached to an idempotent."""
    n = len(e.matrix)
    return mat_sub(mat_scale(2, e.matrix), identity(n))


def decomposition_from_idempotent(a: HomAlgebra, psi) -> tuple[Subspace, Subspace]:
    """``(ker psi, im psi)`` for an idempotent centroid element."""
    if not isinstance(psi, CentroidElement):
        psi = CentroidElement(tuple(tuple(r) for r in psi), 0)
    m = psi.matrix
    if mat_mul(m, m) != m:
        raise NotAnIdempotent("psi o psi != psi")
    if a.n and identity_defect(a, "c", psi.k, (m,)) is not None:
        raise NotAnIdempotent("psi is not a centroid element at power %d" % psi.k)
    if psi.k and not is_invertible(a.alpha):
        raise NotAnIdempotent("the image is only an ideal when the twist map is invertible")
    ker = kernel([dict(enumerate(r)) for r in m], a.n)
    im = Subspace(a.n, transpose(m) if a.n else [])
    if not (is_hom_ideal(a, ker) and is_hom_ideal(a, im)):
        raise NotAnIdempotent("kernel or image is not a Hom-ideal")
    if ker.dim + im.dim != a.n or (ker & im).dim:
        raise NotAnIdempotent("kernel and image do not split the space")
    return ker, im


def verify_prop52_1(a: HomAlgebra, v1: Subspace | None = None, v2: Subspace | None = None,
                    force: bool = False) -> Verdict:
    """Round trip decomposition -> idempotent -> decomposition."""
    claim = "prop52.1_idempotent_roundtrip"
    if v1 is None:
        v1, v2 = summand_subspaces(a)
    gate = _mult_gate(a) + _alpha_gate(a)

    def run():
        e = idempotent_from_decomposition(a, v1, v2)
        ker, im = decomposition_from_idempotent(a, e)
        psi = reflection(e)
        details = {"idempotent": mat_json(e.matrix), "reflection": mat_json(psi),
                   "reflection_squares_to_id": mat_mul(psi, psi) == identity(a.n),
                   "reflection_in_centroid": not a.n or identity_defect(a, "c", 0, (psi,)) is None,
                   "nontrivial": bool(v1.dim and v2.dim)}
        cx = None
        if (im, ker) != (v1, v2):
            cx = {"what": "round trip did not recover the summands",
                  "image_dim": im.dim, "kernel_dim": ker.dim}
        return conclude(claim, cx, None, **details)

    return gated(claim, 0, gate, run, force)


def verify_prop52_2(a: HomAlgebra, K: int = 3, sp: Spaces | None = None,
                    force: bool = False) -> Verdict:
    """Centroid elements are symmetric (up to the twist) for every invariant form."""
    sp = sp or Spaces(a)
    claim = "prop52.2_centroid_symmetric"
    gate = ([] if is_perfect(a) else ["algebra is not perfect"]) + _mult_gate(a)

    def run():
        forms = invariant_forms(a)
        n = a.n
        prods = [(i, j, a.mu[i][j]) for i in range(n) for j in range(n)]
        for k in range(K + 1):
            ak = mat_pow(a.alpha, k)
            ak_cols = transpose(ak) if n else ()
            for gi, psi in enumerate(sp.get("c", k).operators()):
                psi_cols = transpose(psi)
                for fi, f in enumerate(forms):
                    for i, j, m in prods:
                        lhs_x = mat_vec(psi, m)
                        rhs_x = mat_vec(ak, m)
                        for c in range(n):
                            if f(lhs_x, ak_cols[c]) != f(rhs_x, psi_cols[c]):
                                return conclude(claim, {
                                    "what": "centroid element is not symmetric for a form",
                                    "k": k, "generator": gi, "form": mat_json(f.gram),
                                    "operator": mat_json(psi), "triple": [i, j, c]}, K)
        return conclude(claim, None, K, forms=len(forms))

    return gated(claim, K, gate, run, force)


# -- annihilators of subspaces ---------------------------------------------------------

def z_of_subset(a: HomAlgebra, i: Subspace) -> Subspace:
    """``Z_V(I)``: elements whose product with every element of ``I`` vanishes."""
    return annihilator_of(a, i)


def is_perfect_ideal(a: HomAlgebra, j: Subspace) -> bool:
    return is_hom_ideal(a, j) and product_subspace(a, j, j) == j


def verify_prop53(a: HomAlgebra, i: Subspace, K: int = 3, perfect_ideals=(),
                  sp: Spaces | None = None, force: bool = False) -> Verdict:
    sp = sp or Spaces(a)
    claim = "prop53.centroid_invariant_subspaces"
    gate = []
    if not i.is_invariant(a.alpha):
        gate.append("I is not stable under the twist map")
    elif i.image(a.alpha).dim != i.dim:
        gate.append("twist map restricted to I is not onto")
    for J in perfect_ideals:
        if not is_perfect_ideal(a, J):
            gate.append("supplied subspace is not a perfect Hom-ideal")
            break
    Zi = z_of_subset(a, i)

    def run():
        targets = [("Z_V(I)", Zi)] + [("J%d" % t, J) for t, J in enumerate(perfect_ideals)]
        for k in range(K + 1):
            for gi, psi in enumerate(sp.get("c", k).operators()):
                for label, S in targets:
                    for b in S.basis:
                        img = mat_vec(psi, b)
                        if not S.contains(img):
                            cx = {"what": "centroid element moves %s" % label, "k": k,
                                  "generator": gi, "operator": mat_json(psi),
                                  "vector": [str(x) for x in b], "image": [str(x) for x in img]}
                            if label == "Z_V(I)":
                                cx["witness"] = next(
                                    ([str(x) for x in y] for y in i.basis
                                     if any(multiply(a, img, y))), None)
                            return conclude(claim, cx, K, z_dim=Zi.dim)
        return conclude(claim, None, K, z_dim=Zi.dim, perfect_ideals=len(perfect_ideals))

    return gated(claim, K, gate, run, force)


# -- simple algebras -------------------------------------------------------------------------

def verify_prop51(a: HomAlgebra, K: int = 3, sp: Spaces | None = None,
                  force: bool = False, probes: int = 50, seed: int = 0) -> Verdict:
    """If the centroid is only the scalars, the twist map is the identity."""
    sp = sp or Spaces(a)
    claim = "prop51.scalar_centroid_forces_identity"
    gate = _mult_gate(a) + _alpha_gate(a)
    evidence = None
    if not a.flags.asserted_simple:
        gate.append("algebra is not flagged simple")
    else:
        evidence = simplicity_evidence(a, probes, seed)
        if not evidence["passed"]:
            gate.append("simplicity evidence failed")

    def run():
        total = sp.aggregate("c", K).total
        scalars = Subspace(a.n * a.n, [flatten(identity(a.n))])
        if total != scalars:
            return Verdict(claim, "not_applicable", True,
                           "centroid is larger than the scalars", K, None,
                           {"centroid_dim": total.dim, "evidence": evidence})
        cx = None if a.alpha == identity(a.n) else {
            "what": "centroid is scalar but the twist map is not the identity",
            "alpha": mat_json(a.alpha)}
        return conclude(claim, cx, K, centroid_dim=total.dim, evidence=evidence)

    return gated(claim, K, gate, run, force)


# -- quotients and induced maps ------------------------------------------------------------

def mult_span(a: HomAlgebra, envelope: bool = False) -> MapSpace:
    """``span{L_x}``; with ``envelope`` also closed under composition."""
    n = a.n
    s = Subspace(n * n, [flatten(L) for L in basis_L(a)])
    if envelope:
        while True:
            mats = [unflatten(b, n) for b in s.basis]
            nxt = Subspace(n * n, list(s.basis) + [flatten(mat_mul(x, y))
                                                   for x in mats for y in mats])
            if nxt.dim == s.dim:
                break
            s = nxt
    return MapSpace("mult_envelope" if envelope else "mult", 0, s, a)


def preserving_operators(q: QuotientMap) -> Subspace:
    """Operators commuting with the source twist that map the ideal into itself."""
    a = q.source
    n = a.n
    rows = commutant_constraints(a.alpha)
    ann = q.ideal.annihilator()
    # f(b) in K  <=>  <w, f b> = 0 for every w in the annihilator of K
    for w in ann.basis:
        for b in q.ideal.basis:
            row = {}
            for r in range(n):
                for c in range(n):
                    x = w[r] * b[c]
                    if x:
                        row[r * n + c] = row.get(r * n + c, 0) + x
            row = {k: v for k, v in row.items() if v}
            if row:
                rows.append(row)
    return kernel(rows, n * n)


def induced_map(q: QuotientMap, f, require_commuting: bool = True) -> InducedMap:
    """The unique ``fbar`` with ``pi o f = fbar o pi``.

    Multiplication operators of a Hom-algebra need not commute with the twist
    map; pass ``require_commuting=False`` to induce them anyway (the induced map
    is well defined as soon as ``f`` preserves the ideal).
    """
    a1, a2 = q.source, q.target
    f = tuple(tuple(r) for r in f)
    commutes = mat_mul(f, a1.alpha) == mat_mul(a1.alpha, f)
    if require_commuting and not commutes:
        raise NotIdealPreserving("f does not commute with the twist map")
    if not all(q.ideal.contains(mat_vec(f, b)) for b in q.ideal.basis):
        raise NotIdealPreserving("f does not map the ideal into itself")
    n2 = a2.n
    if n2 == 0:
        return InducedMap(q, f, ())
    cols = [q.project(mat_vec(f, unit(a1.n, r))) for r in q.representatives]
    fbar = transpose(cols)
    if mat_mul(q.pi, f) != mat_mul(fbar, q.pi):
        raise NotIdealPreserving("pi o f != fbar o pi")
    if commutes and mat_mul(fbar, a2.alpha) != mat_mul(a2.alpha, fbar):
        raise NotIdealPreserving("induced map does not commute with the quotient twist")
    return InducedMap(q, f, fbar)


def _bar(q: QuotientMap, f, require_commuting: bool = True) -> tuple:
    return induced_map(q, f, require_commuting).induced_op


def verify_thm54(q: QuotientMap, K: int = 3, envelope: bool = False,
                 force: bool = False) -> list[Verdict]:
    a1, a2 = q.source, q.target
    n1, n2 = a1.n, a2.n
    gate = _alpha_gate(a1)
    sp1, sp2 = Spaces(a1), Spaces(a2)
    E = preserving_operators(q)
    Eops = [unflatten(b, n1) for b in E.basis]
    Z1, Z2 = centralizer(a1), centralizer(a2)
    out = []

    def run_laws():
        claim = "thm54.1_homomorphism"
        for i, f in enumerate(Eops):
            fb = _bar(q, f)
            if _bar(q, mat_mul(a1.alpha, f)) != (mat_mul(a2.alpha, fb) if n2 else ()):
                return conclude(claim, {"what": "induced map does not intertwine sigma",
                                        "generator": i, "operator": mat_json(f)}, K)
            for j, g in enumerate(Eops):
                lhs = _bar(q, mat_mul(f, g))
                rhs = mat_mul(fb, _bar(q, g)) if n2 else ()
                if lhs != rhs:
                    return conclude(claim, {"what": "induced map is not multiplicative",
                                            "generators": [i, j]}, K)
        return conclude(claim, None, K, preserving_dim=E.dim)

    def run_mult():
        claim = "thm54.1a_mult"
        for i in range(n1):
            x = unit(n1, i)
            L = L_operator(a1, x)
            if not all(q.ideal.contains(mat_vec(L, b)) for b in q.ideal.basis):
                return conclude(claim, {"what": "L_x does not preserve the ideal", "x": i}, K)
            expect = L_operator(a2, q.project(x)) if n2 else ()
            got = _bar(q, L, False)
            if got != expect:
                return conclude(claim, {"what": "induced L_x differs from L_pi(x)", "x": i,
                                        "induced": mat_json(got)}, K)
        m1, m2 = mult_span(a1, envelope), mult_span(a2, envelope)
        image = Subspace(n2 * n2, [flatten(_bar(q, op, False)) for op in m1.operators()])
        if image != m2.space:
            return conclude(claim, {"what": "image of Mult(V1) differs from Mult(V2)",
                                    "image_dim": image.dim, "target_dim": m2.dim,
                                    "envelope": envelope}, K)
        return conclude(claim, None, K, mult_dim=m2.dim, envelope=envelope)

    def run_centroid():
        claim = "thm54.1a_centroid"
        for k in range(K + 1):
            inter = sp1.get("c", k).space & E
            for gi, b in enumerate(inter.basis):
                fb = _bar(q, unflatten(b, n1))
                if n2 and not sp2.get("c", k).contains(fb):
                    return conclude(claim, {"what": "induced centroid element leaves C(V2)",
                                            "k": k, "generator": gi, "induced": mat_json(fb),
                                            "defect": member_defect(a2, "c", k, fb)}, K)
        return conclude(claim, None, K)

    out.append(gated("thm54.1_homomorphism", K, gate, run_laws, force))
    out.append(gated("thm54.1a_mult", K, gate, run_mult, force))
    out.append(gated("thm54.1a_centroid", K, gate, run_centroid, force))

    def run_center():
        claim = "thm54.1c_center_preserved"
        for k in range(K + 1):
            for gi, psi in enumerate(sp1.get("c", k).operators()):
                if not E.contains(flatten(psi)):
                    return conclude(claim, {"what": "centroid element moves the ideal",
                                            "k": k, "generator": gi,
                                            "operator": mat_json(psi)}, K)
        return conclude(claim, None, K)

    gate_c = gate + ([] if q.ideal == Z1 else ["ideal is not the centralizer"])
    out.append(gated("thm54.1c_center_preserved", K, gate_c, run_center, force))

    gate2 = list(gate)
    if not is_perfect(a1):
        gate2.append("source is not perfect")
    if not Z1.contains_space(q.ideal):
        gate2.append("ideal is not inside the centralizer")

    def run_injective():
        claim = "thm54.2_injective"
        per_k = []
        for k in range(K + 1):
            inter = sp1.get("c", k).space & E
            image = Subspace(n2 * n2, [flatten(_bar(q, unflatten(b, n1))) for b in inter.basis])
            per_k.append({"k": k, "dim": inter.dim, "image_dim": image.dim})
            if image.dim != inter.dim:
                return conclude(claim, {"what": "nonzero centroid element induces zero",
                                        "k": k}, K, per_k=per_k)
        return conclude(claim, None, K, per_k=per_k)

    out.append(gated("thm54.2_injective", K, gate2, run_injective, force))

    gate3 = gate2 + ([] if Z2.dim == 0 else ["quotient has a nonzero centralizer"])

    def run_total():
        claim = "thm54.3_total"
        for k in range(K + 1):
            for gi, psi in enumerate(sp1.get("c", k).operators()):
                if not E.contains(flatten(psi)):
                    return conclude(claim, {"what": "centroid element moves the ideal",
                                            "k": k, "generator": gi}, K)
        return conclude(claim, None, K)

    out.append(gated("thm54.3_total", K, gate3, run_total, force))
    return out


# -- suite ------------------------------------------------------------------------------------

def standard_subsets(a: HomAlgebra) -> list[tuple[str, Subspace]]:
    """Subspaces ``I`` used for the annihilator check: 0, V, Z(V), mu(V,V), summands."""
    n = a.n
    out = [("zero", Subspace.zero(n)), ("whole", Subspace.full(n)),
           ("center", centralizer(a)), ("square", product_subspace(a, Subspace.full(n),
                                                                   Subspace.full(n)))]
    if len(a.summands) == 2:
        v1, v2 = summand_subspaces(a)
        out += [("summand1", v1), ("summand2", v2)]
    return out


def standard_quotients(a: HomAlgebra) -> list[tuple[str, QuotientMap]]:
    """Quotients by the centralizer and by the second summand, when these are Hom-ideals."""
    cands = [("center", centralizer(a))]
    if len(a.summands) == 2:
        cands.append(("summand2", summand_subspaces(a)[1]))
    return [(label, quotient(a, K)) for label, K in cands if is_hom_ideal(a, K)]


def section5(a: HomAlgebra, K: int = 3, force: bool = False,
             envelope: bool = False, seed: int = 0) -> list[Verdict]:
    sp = Spaces(a)
    out = []
    if len(a.summands) == 2:
        out.append(verify_prop52_1(a, force=force))
    out.append(verify_prop51(a, K, sp, force, seed=seed))
    out.append(verify_prop52_2(a, K, sp, force))
    perfect = [S for _, S in standard_subsets(a) if S.dim and is_perfect_ideal(a, S)]
    for label, S in standard_subsets(a):
        v = verify_prop53(a, S, K, perfect, sp, force)
        v.claim += "[%s]" % label
        out.append(v)
    for label, q in standard_quotients(a):
        for v in verify_thm54(q, K, envelope, force):
            v.claim += "[%s]" % label
            out.append(v)
    return out

