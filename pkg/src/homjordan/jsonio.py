"""Reading and writing algebra documents.

An algebra document looks like::

    {"name": "dual-numbers", "dim": 2,
     "alpha": [["1", "0"], ["0", "1"]],
     "mu": [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]],
     "flags": {"asserted_simple": false, ...}}

``mu[i][j][k]`` is the coefficient of ``e_k`` in ``mu(e_i, e_j)``; scalars are
strings ``"p/q"`` (integers are accepted on input).  A direct sum may carry its
two parts under ``"summands"``.
"""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import asdict
from fractions import Fraction

from .core import AlgebraError, Flags, HomAlgebra
from .exactlin import fstr


class InputError(ValueError):
    """A document that cannot be turned into an algebra."""


def parse_scalar(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError("scalar %r must be an integer or a 'p/q' string" % (x,))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InputError("bad scalar %r" % x) from e
    raise InputError("bad scalar %r" % (x,))


def algebra_from_doc(doc) -> HomAlgebra:
    if not isinstance(doc, dict):
        raise InputError("algebra document must be a JSON object")
    try:
        n = doc["dim"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise InputError("dim must be a non-negative integer")
        mu = [[[parse_scalar(c) for c in v] for v in row] for row in doc["mu"]]
        alpha = doc.get("alpha")
        alpha = ([[parse_scalar(c) for c in r] for r in alpha] if alpha is not None
                 else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)])
        flags = doc.get("flags") or {}
        unknown = set(flags) - set(Flags.__dataclass_fields__)
        if unknown:
            raise InputError("unknown flags %s" % sorted(unknown))
        summands = tuple(algebra_from_doc(s) for s in doc.get("summands") or ())
        if summands and (len(summands) != 2 or sum(s.n for s in summands) != n):
            raise InputError("summands must be two algebras whose dimensions add up")
        return HomAlgebra(n, mu, alpha, name=str(doc.get("name", "")),
                          flags=Flags(**{k: bool(v) for k, v in flags.items()}),
                          summands=summands)
    except KeyError as e:
        raise InputError("missing field %s" % e) from e
    except TypeError as e:
        raise InputError("malformed algebra document: %s" % e) from e
    except AlgebraError as e:
        raise InputError(str(e)) from e


def algebra_to_doc(a: HomAlgebra) -> dict:
    doc = {"name": a.name, "dim": a.n,
           "alpha": [[fstr(x) for x in r] for r in a.alpha],
           "mu": [[[fstr(x) for x in v] for v in row] for row in a.mu],
           "flags": asdict(a.flags)}
    if a.summands:
        doc["summands"] = [algebra_to_doc(s) for s in a.summands]
    return doc


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def loads_algebra(text: str) -> HomAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("invalid JSON: %s" % e) from e
    return algebra_from_doc(doc)


def read_algebra(path: str) -> HomAlgebra:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e)) from e
    return loads_algebra(text)


def read_inputs(path: str) -> list[tuple[str, HomAlgebra]]:
    """A single file, or every ``*.json`` file of a directory in name order."""
    if os.path.isdir(path):
        names = sorted(f for f in os.listdir(path) if f.endswith(".json"))
        if not names:
            raise InputError("no .json files in %s" % path)
        return [(f, read_algebra(os.path.join(path, f))) for f in names]
    return [(os.path.basename(path), read_algebra(path))]


def write_atomic(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
