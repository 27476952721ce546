import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamegood import serialize as ser
from tamegood.errors import DomainError
from tamegood.goodcore import goodify_group, goodify_lie
from tamegood.localfield import INF, FieldContext
from tamegood.rootsys import RootDatum
from tamegood.suites import random_group_element, random_lie_element
from tamegood.torus import TorusGroupElement, TorusLieElement, is_good_lie

F5 = FieldContext(5, precision=10)
T = F5.uniformizer()
A2 = RootDatum([("A", 2)])


@given(st.fractions())
def test_rational_round_trip(x):
    s = ser.rational(x)
    assert "/" in s and ser.parse_rational(s) == x


def test_rational_special_cases():
    assert ser.rational(INF) == "inf" and ser.parse_rational("inf") is INF
    assert ser.rational(3) == "3/1"
    for bad in (1.5, None, True, "x/y", "1/0"):
        with pytest.raises(ser.MalformedInput):
            ser.parse_rational(bad)


def test_root_labels():
    assert ser.root_label((1, 2)) == "a1+2a2"
    assert ser.root_label((0, -1)) == "-a2"
    assert ser.root_label((-1, -3)) == "-a1-3a2"


@pytest.mark.parametrize("lattice", ["adjoint", "sc",
                                     {"generators": [[0, 1, 0], [2, -1, 0], [-1, 2, -1], [0, -1, 2]]}])
def test_datum_round_trip(lattice):
    d = RootDatum([("A", 3)], lattice)
    e = ser.datum_from_json(json.loads(ser.dumps(ser.datum_to_json(d))))
    assert e.roots == d.roots and e.lattice == d.lattice


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([(5, 1, 1), (7, 2, 1), (7, 1, 3), (3, 2, 2)]), st.integers(0, 2**32 - 1))
def test_series_round_trip(field, seed):
    p, m, e = field
    ctx = FieldContext(p, 1, m, e, precision=4)
    x = ctx.random_element(np.random.default_rng(seed), -2, 4, zero_prob=0.3)
    doc = json.loads(ser.dumps(ser.series_to_json(x)))
    y = ser.series_from_json(ctx, doc)
    assert y.agrees_with(x) and y.prec == x.prec


def test_field_round_trip():
    ctx = FieldContext(7, 1, 2, 3, precision=Fraction(5, 2))
    back = ser.field_from_json(ser.field_to_json(ctx))
    assert (back.p, back.m, back.e, back.precision) == (7, 2, 3, Fraction(5, 2))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([("A", 2, "sc"), ("G", 2, "adjoint"), ("B", 3, "sc")]),
       st.integers(0, 2**32 - 1))
def test_torus_round_trip(typ, seed):
    kind, n, lattice = typ
    rng = np.random.default_rng(seed)
    d = RootDatum([(kind, n)], lattice)
    for x in (random_lie_element(d, rng), random_group_element(d, rng)):
        doc = json.loads(ser.dumps(ser.torus_to_json(x)))
        y = ser.torus_from_json(doc)
        assert type(y) is type(x) and y.agrees_with(x)


def test_simple_root_values_input():
    doc = {"datum": {"components": [{"type": "A", "rank": 2}]},
           "field": {"p": 5, "precision": "10/1"},
           "simple_root_values": [{"terms": [{"exp": "1/1", "coeff": [1]}]},
                                  {"terms": [{"exp": "2/1", "coeff": 1}]}]}
    x = ser.torus_from_json(doc)
    assert x.agrees_with(TorusLieElement.from_root_values(A2, F5, [T, T * T]))
    doc["simple_root_values"] = doc["simple_root_values"][:1]
    with pytest.raises(DomainError):
        ser.torus_from_json(doc)


@pytest.mark.parametrize("doc", [
    {"field": {"p": 5}, "lie": []},
    {"datum": {"components": "A2"}, "field": {"p": 5}, "lie": []},
    {"datum": {"components": [{"type": "A", "rank": 1}]}, "field": {"p": 5}},
    {"datum": {"components": [{"type": "A", "rank": 1}]}, "field": {"p": "five"}, "lie": [0]},
    {"datum": {"components": [{"type": "A", "rank": 1}]}, "field": {"p": 5},
     "lie": [{"terms": [{"exp": "1/1", "coeff": [1]}, {"exp": "1/1", "coeff": [2]}]}]},
    {"datum": {"components": [{"type": "A", "rank": 1}]}, "field": {"p": 5},
     "lie": [{"terms": [{"exp": 0.5, "coeff": [1]}]}]},
])
def test_malformed_torus(doc):
    with pytest.raises(ser.MalformedInput):
        ser.torus_from_json(doc)


def test_read_document_kinds():
    x = TorusLieElement.from_root_values(A2, F5, [T, T * T])
    lie_doc = ser.goodification_to_json(goodify_lie(x))
    back = ser.read_document(ser.dumps(lie_doc))
    assert back["good"].agrees_with(goodify_lie(x).X2)
    g = TorusGroupElement(A2, F5, [1 + T, 1 + T * T])
    grp = ser.read_document(ser.dumps(ser.goodification_to_json(goodify_group(g))))
    assert grp["n"] == {"a2": 2}
    good = ser.read_document(ser.dumps(ser.goodness_to_json(A2, is_good_lie(x))))
    assert good["depth"] == 1 and good["valuations"]["a2"] == "2/1"
    for text in ("{", "[]", '{"kind": "nope"}', '{"no": "kind"}'):
        with pytest.raises(ser.MalformedInput):
            ser.read_document(text)


def test_dumps_is_deterministic():
    x = TorusLieElement.from_root_values(A2, F5, [T, T * T])
    docs = [ser.dumps(ser.goodification_to_json(goodify_lie(x))) for _ in range(2)]
    assert docs[0] == docs[1]
    assert ser.dumps({"a": Fraction(1, 2), "b": {3, 1}}) == '{"a":"1/2","b":[1,3]}'
