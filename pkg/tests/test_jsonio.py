import json
import os

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homjordan.corpus import named_corpus
from homjordan.jsonio import (
    InputError, algebra_from_doc, algebra_to_doc, dumps, loads_algebra, parse_scalar,
    read_inputs, write_atomic,
)

DUAL = {"name": "d", "dim": 2, "alpha": [["1", "0"], ["0", "1"]],
        "mu": [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]]}


def test_scalars():
    assert parse_scalar("3/6") == parse_scalar(1) / 2
    assert parse_scalar(4) == 4
    for bad in (0.5, True, "x", "1/0", None):
        with pytest.raises(InputError):
            parse_scalar(bad)


def test_roundtrip_corpus():
    for a in named_corpus().values():
        doc = algebra_to_doc(a)
        b = loads_algebra(dumps(doc))
        assert b == a
        assert algebra_to_doc(b) == doc


@settings(max_examples=30, deadline=None)
@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=7),
                min_size=8, max_size=8))
def test_roundtrip_arbitrary_constants(vals):
    doc = {"name": "r", "dim": 2,
           "mu": [[[str(vals[0]), str(vals[1])], [str(vals[2]), str(vals[3])]],
                  [[str(vals[4]), str(vals[5])], [str(vals[6]), str(vals[7])]]]}
    a = algebra_from_doc(doc)
    assert algebra_from_doc(json.loads(dumps(algebra_to_doc(a)))) == a


def test_alpha_defaults_to_identity():
    doc = dict(DUAL)
    del doc["alpha"]
    assert algebra_from_doc(doc).alpha == ((1, 0), (0, 1))


@pytest.mark.parametrize("doc", [
    [],
    {"dim": 2},
    {"dim": -1, "mu": []},
    {"dim": 2, "mu": [[["1"]]]},
    {"dim": 1, "mu": [[[1.0]]]},
    {"dim": 1, "mu": [[["1"]]], "flags": {"bogus": True}},
    {"dim": 1, "mu": [[["1"]]], "summands": [{"dim": 1, "mu": [[["1"]]]}]},
])
def test_bad_documents(doc):
    with pytest.raises(InputError):
        algebra_from_doc(doc)


def test_invalid_json_text():
    with pytest.raises(InputError):
        loads_algebra("{")


def test_read_inputs_sorted(tmp_path):
    for name in ("b.json", "a.json"):
        (tmp_path / name).write_text(json.dumps(DUAL))
    (tmp_path / "notes.txt").write_text("ignored")
    assert [label for label, _ in read_inputs(str(tmp_path))] == ["a.json", "b.json"]
    with pytest.raises(InputError):
        read_inputs(str(tmp_path / "missing.json"))
    empty = tmp_path / "empty"
    empty.mkdir()
    with pytest.raises(InputError):
        read_inputs(str(empty))


def test_write_atomic_leaves_no_temp_files(tmp_path):
    target = tmp_path / "sub" / "out.json"
    write_atomic(str(target), "x\n")
    write_atomic(str(target), "y\n")
    assert target.read_text() == "y\n"
    assert os.listdir(tmp_path / "sub") == ["out.json"]
