"""Command-line front end.

Exit codes: 0 when every requested check passes (not-applicable verdicts count
as passing), 1 when a check or an applicable verdict fails, 2 on unusable input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .centroid import centroid_composition_table, section5, verify_thm54
from .core import (
    AlgebraError, HomAlgebra, check_hom_jordan, commutativity_failure,
    multiplicativity_failure, quotient, validated,
)
from .corpus import abelian, dual_yau, named_corpus, perfect_center_yau, poly_yau, random_yau
from .exactlin import Subspace
from .extend import extend_algebra, section4
from .jsonio import (
    InputError, algebra_to_doc, dumps, parse_scalar, read_inputs, write_atomic,
)
from .solve import KINDS, Spaces
from .theorems import FAILS, section3

SUITES = ("section3", "section4", "section5")
YAU_BASES = {"dual-numbers": dual_yau, "trunc-poly-3": lambda lam: poly_yau(3, lam),
             "perfect-center": perfect_center_yau}


# -- helpers -------------------------------------------------------------------------------

def load(path: str) -> list[tuple[str, HomAlgebra]]:
    return [(label, validated(a)) for label, a in read_inputs(path)]


def require_valid(label: str, a: HomAlgebra) -> None:
    if not a.flags.commutative_checked:
        raise InputError("%s: product is not commutative" % label)
    if not a.flags.hom_jordan_checked:
        raise InputError("%s: Hom-Jordan identity fails" % label)


def load_valid(path: str) -> list[tuple[str, HomAlgebra]]:
    algs = load(path)
    for label, a in algs:
        require_valid(label, a)
    return algs


def emit(args, payload) -> None:
    text = dumps(payload)
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)


def table(rows: list[tuple]) -> None:
    if not rows:
        return
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        print("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip(), file=sys.stderr)


def verdict_rows(name: str, verdicts) -> list[tuple]:
    return [(name, v.claim, v.status) for v in verdicts]


def run_suite(a: HomAlgebra, suites, K: int = 3, force: bool = False,
              envelope: bool = False, seed: int = 0) -> list:
    out = []
    if "section3" in suites:
        out += section3(a, K, force)
    if "section4" in suites:
        out += section4(a, K, force)
    if "section5" in suites:
        out += section5(a, K, force, envelope, seed)
    return out


def _suites(name: str) -> tuple:
    return SUITES if name == "all" else (name,)


def _kinds(text: str | None) -> tuple:
    if not text:
        return KINDS
    kinds = tuple(k.strip() for k in text.split(",") if k.strip())
    bad = [k for k in kinds if k not in KINDS]
    if bad:
        raise InputError("unknown kinds %s (choose from %s)" % (bad, ",".join(KINDS)))
    return kinds


# -- commands ------------------------------------------------------------------------------

def cmd_validate(args) -> int:
    reports, rows, ok = [], [], True
    for label, a in load(args.input):
        rep = {"algebra": a.name, "file": label}
        pair = commutativity_failure(a)
        rep["commutative"] = {"ok": pair is None, "failing_pair": list(pair) if pair else None}
        if pair is None:
            hj = check_hom_jordan(a)
            rep["hom_jordan"] = {"ok": hj.ok, "failing_tuple":
                                 list(hj.failing_tuple) if hj.failing_tuple else None}
        else:
            rep["hom_jordan"] = {"ok": False, "failing_tuple": None,
                                 "reason": "product is not commutative"}
        mpair = multiplicativity_failure(a)
        rep["multiplicative"] = {"ok": mpair is None,
                                 "failing_pair": list(mpair) if mpair else None}
        good = rep["commutative"]["ok"] and rep["hom_jordan"]["ok"]
        if args.require_multiplicative:
            good = good and rep["multiplicative"]["ok"]
        rep["ok"] = good
        ok = ok and good
        reports.append(rep)
        rows.append((a.name, "commutative", _flag(rep["commutative"], "failing_pair")))
        rows.append((a.name, "hom_jordan", _flag(rep["hom_jordan"], "failing_tuple")))
        rows.append((a.name, "multiplicative", _flag(rep["multiplicative"], "failing_pair")))
    emit(args, reports)
    table(rows)
    return 0 if ok else 1


def _flag(part: dict, key: str) -> str:
    if part["ok"]:
        return "ok"
    return "fails at %s" % (part.get(key),) if part.get(key) else "fails"


def cmd_spaces(args) -> int:
    kinds = _kinds(args.kinds)
    reports, rows = [], []
    for _, a in load_valid(args.input):
        sp = Spaces(a)
        entry = {"algebra": a.name, "max_power": args.max_power, "spaces": {}}
        for kind in kinds:
            entry["spaces"][kind] = {
                "per_k": [sp.get(kind, k).report() for k in range(args.max_power + 1)],
                "aggregate": sp.aggregate(kind, args.max_power).report()}
            rows.append((a.name, kind, " ".join(str(sp.get(kind, k).dim)
                                                for k in range(args.max_power + 1))))
        reports.append(entry)
    emit(args, reports)
    table(rows)
    return 0


def _verdict_command(args, compute) -> int:
    reports, rows, failed = [], [], False
    for _, a in load_valid(args.input):
        entry, verdicts = compute(a)
        entry = {"algebra": a.name, "max_power": args.max_power, **entry,
                 "verdicts": [v.to_dict() for v in verdicts]}
        reports.append(entry)
        rows += verdict_rows(a.name, verdicts)
        failed = failed or any(v.status == FAILS for v in verdicts)
    emit(args, reports)
    table(rows)
    return 1 if failed else 0


def cmd_theorems(args) -> int:
    suites = _suites(args.suite)
    return _verdict_command(args, lambda a: ({"suites": list(suites)}, run_suite(
        a, suites, args.max_power, args.force, args.envelope, args.seed)))


def cmd_extend(args) -> int:
    def compute(a):
        ext = extend_algebra(a)
        return ({"carrier": algebra_to_doc(ext.carrier)}, section4(a, args.max_power, args.force))
    return _verdict_command(args, compute)


def cmd_centroid(args) -> int:
    def compute(a):
        tab = centroid_composition_table(a, args.max_power)
        info = {"dim": tab["dim"], "closed": tab["closed"], "graded_closed": tab["graded_closed"],
                "basis": tab["basis"], "table": tab["table"]}
        return ({"centroid": info},
                section5(a, args.max_power, args.force, args.envelope, args.seed))
    return _verdict_command(args, compute)


def read_ideal(text: str, n: int) -> Subspace:
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("ideal must be a JSON list of basis rows: %s" % e) from e
    if not isinstance(rows, list) or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise InputError("ideal must be a list of rows of length %d" % n)
    return Subspace(n, [[parse_scalar(c) for c in r] for r in rows])


def cmd_quotient(args) -> int:
    def compute(a):
        ideal = read_ideal(args.ideal, a.n)
        try:
            q = quotient(a, ideal)
        except AlgebraError as e:
            raise InputError("%s: %s" % (a.name, e)) from e
        doc = {"ideal_dim": ideal.dim, "target": algebra_to_doc(validated(q.target))}
        return doc, verify_thm54(q, args.max_power, args.envelope, args.force)
    return _verdict_command(args, compute)


def generated(args) -> list[HomAlgebra]:
    if args.kind == "abelian":
        if args.dim is None or args.dim < 0:
            raise InputError("--kind abelian needs --dim >= 0")
        return [abelian(args.dim)]
    if args.kind == "yau":
        if args.base not in YAU_BASES:
            raise InputError("--base must be one of %s" % ", ".join(sorted(YAU_BASES)))
        lam = parse_scalar(args.lam)
        if lam == 0:
            raise InputError("--lambda must be nonzero")
        return [YAU_BASES[args.base](lam)]
    return list(named_corpus().values()) + random_yau(args.seed)


def cmd_gen(args) -> int:
    algs = generated(args)
    if not args.output:
        if len(algs) != 1:
            raise InputError("the corpus needs an --output directory")
        sys.stdout.write(dumps(algebra_to_doc(algs[0])))
        return 0
    if args.output.endswith(".json") and len(algs) == 1:
        write_atomic(args.output, dumps(algebra_to_doc(algs[0])))
    else:
        for a in algs:
            write_atomic(os.path.join(args.output, "%s.json" % _filename(a.name)),
                         dumps(algebra_to_doc(a)))
    table([(a.name, a.n, "multiplicative" if a.flags.multiplicative_checked else "")
           for a in algs])
    return 0


def _filename(name: str) -> str:
    return "".join(c if c.isalnum() or c in "-_+." else "_" for c in name)


# -- entry point ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homjordan",
                                description="Exact computations with Hom-Jordan algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("--input", required=True, help="algebra JSON file or directory")
        sp.add_argument("--output", help="write the JSON report here instead of stdout")
        sp.add_argument("--max-power", type=int, default=3, help="largest power k (default 3)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--force", action="store_true",
                        help="also evaluate gated claims (kept as forced_outcome)")
        sp.add_argument("--envelope", action="store_true",
                        help="use the composition closure of span{L_x} as Mult(V)")

    v = sub.add_parser("validate", help="check the defining identities and multiplicativity")
    common(v)
    v.add_argument("--require-multiplicative", action="store_true")
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("spaces", help="operator spaces per kind and power")
    common(s)
    s.add_argument("--kinds", help="comma-separated subset of %s" % ",".join(KINDS))
    s.set_defaults(func=cmd_spaces)

    t = sub.add_parser("theorems", help="run verification suites")
    common(t)
    t.add_argument("--suite", choices=SUITES + ("all",), default="all")
    t.set_defaults(func=cmd_theorems)

    e = sub.add_parser("extend", help="doubled carrier algebra and its checks")
    common(e)
    e.set_defaults(func=cmd_extend)

    c = sub.add_parser("centroid", help="centroid composition table and its checks")
    common(c)
    c.set_defaults(func=cmd_centroid)

    q = sub.add_parser("quotient", help="quotient by an ideal and induced-map checks")
    common(q)
    q.add_argument("--ideal", required=True, help="JSON list of basis rows, or a file holding it")
    q.set_defaults(func=cmd_quotient)

    g = sub.add_parser("gen", help="write example algebras")
    common(g, needs_input=False)
    g.add_argument("--kind", choices=("corpus", "abelian", "yau"), default="corpus")
    g.add_argument("--dim", type=int)
    g.add_argument("--lambda", dest="lam", default="2")
    g.add_argument("--base", default="dual-numbers", help="algebra to twist for --kind yau")
    g.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.max_power < 0:
        print("error: --max-power must be >= 0", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except InputError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
