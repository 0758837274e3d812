import glob
import json
import os
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import hom_lie_algebras, hom_lr_algebras

from homlr.errors import DimensionError, ParseError, SchemaError
from homlr.spec_io import build, parse_rational, parse_spec, serialize, spec_of

CORPUS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "corpus")
DOCS = sorted(p for p in glob.glob(os.path.join(CORPUS, "*.json"))
              if os.path.basename(p) not in ("manifest.json", "poisson_certificates.json"))


@pytest.mark.parametrize("path", DOCS, ids=os.path.basename)
def test_corpus_documents_round_trip(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    spec = parse_spec(text)
    assert serialize(spec) == text
    assert parse_spec(serialize(spec)) == spec


@pytest.mark.parametrize("path", [p for p in DOCS if json.load(open(p))["kind"] in
                                  ("hom_lie", "comm_algebra", "hom_lr", "poisson", "extension")],
                         ids=os.path.basename)
def test_build_then_spec_of_is_identity(path):
    with open(path, encoding="utf-8") as fh:
        spec = parse_spec(fh.read())
    obj = build(spec)
    # hom_lie documents come back as hom_lie
    assert spec_of(obj) == spec


@settings(max_examples=30, deadline=None)
@given(hom_lie_algebras(4))
def test_random_hom_lie_serialization(g):
    spec = spec_of(g)
    assert parse_spec(serialize(spec)) == spec
    assert build(parse_spec(serialize(spec))) == g


@settings(max_examples=20, deadline=None)
@given(hom_lr_algebras())
def test_random_hom_lr_serialization(L):
    spec = spec_of(L)
    assert build(parse_spec(serialize(spec))) == L


@given(st.fractions(max_denominator=10 ** 6))
def test_rational_strings(q):
    assert parse_rational("%d/%d" % (q.numerator, q.denominator)) == q
    assert parse_rational(str(q)) == q


def test_rational_errors():
    assert parse_rational(3) == 3 and parse_rational(" -4 / 6 ") == Fraction(-2, 3)
    for bad in ("1/0", "0.5", "abc", 0.5, True, None, [1]):
        with pytest.raises(SchemaError):
            parse_rational(bad)


def _doc(**kw):
    base = {"kind": "hom_lie", "dim": 2, "bracket": [[0, 1, 1, "1"], [1, 0, 1, "-1"]],
            "alpha": [["1", "0"], ["0", "1"]]}
    base.update(kw)
    return json.dumps(base)


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as info:
        parse_spec('{\n  "kind": "hom_lie",\n  "dim": ,\n}')
    assert info.value.line == 3 and info.value.column == 10
    assert "line 3" in str(info.value)


def test_schema_errors():
    parse_spec(_doc())
    for bad in (_doc(kind="lie"), _doc(dim=-1), _doc(extra=1),
                _doc(bracket=[[0, 1, 1, 0.5]]), _doc(bracket=[[0, 1, 1]]),
                _doc(bracket=[[0, 1, 1, "1"], [0, 1, 1, "2"]]), "[1, 2]",
                json.dumps({"dim": 2})):
        with pytest.raises(SchemaError):
            parse_spec(bad)


def test_out_of_range_index():
    with pytest.raises(DimensionError):
        parse_spec(_doc(bracket=[[0, 2, 1, "1"]]))
    with pytest.raises(DimensionError):
        parse_spec(_doc(alpha=[["1", "0"]]))
