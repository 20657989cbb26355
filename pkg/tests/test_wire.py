import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from binaryk import wire
from binaryk.cli import RANDGEN_KINDS, randgen_payload
from binaryk.errors import ParseError
from binaryk.exactrings import PrimeField, ring_from_string

from .strategies import matrices

F5 = PrimeField(5)


@pytest.mark.parametrize("ring", [F5, ring_from_string("F9"), ring_from_string("Q"), ring_from_string("Z")], ids=str)
@given(data=st.data())
def test_matrix_round_trip(ring, data):
    m = data.draw(matrices(ring))
    raw = json.loads(json.dumps(wire.dump_matrix(m)))
    assert wire.parse_matrix(ring, raw, m.shape) == m


def test_matrix_shape_errors():
    with pytest.raises(ParseError):
        wire.parse_matrix(F5, [["1", "2"], ["3"]], (2, 2))
    # a well-formed matrix of the wrong shape parses; validators report it
    assert wire.parse_matrix(F5, [["1"]], (2, 1)).shape == (1, 1)
    assert wire.parse_matrix(F5, [], (0, 3)).shape == (0, 3)


@pytest.mark.parametrize("kind", RANDGEN_KINDS)
@pytest.mark.parametrize("size", [0, 2])
def test_randgen_payloads_round_trip(kind, size):
    payload = json.loads(json.dumps(randgen_payload(kind, "F4", size, 3)))
    k, value = wire.load(payload)
    assert k == wire.infer_kind(payload)
    again = json.loads(json.dumps(randgen_payload(kind, "F4", size, 3)))
    assert wire.canonical(payload) == wire.canonical(again)


def test_complex_dump_parse_identity():
    payload = randgen_payload("acyclic", "Q", 3, 7)
    c = wire.parse_complex(payload)
    assert wire.canonical(wire.dump_complex(c)) == wire.canonical(payload)


def test_kind_inference():
    assert wire.infer_kind({"degrees": {}}) == "complex"
    assert wire.infer_kind({"A": 1}) == "dses"
    with pytest.raises(ParseError):
        wire.infer_kind({"kind": "sheaf"})
    with pytest.raises(ParseError):
        wire.infer_kind([1, 2])


@pytest.mark.parametrize("payload", [
    {"kind": "complex", "ring": {"ring": "Fp", "p": 5}, "degrees": {"0": "two"}},
    {"kind": "complex", "ring": {"ring": "Fp", "p": 6}, "degrees": {}},
    {"kind": "complex", "degrees": {"0": 1}},
    {"kind": "binary", "ring": {"ring": "Fp", "p": 5}, "degrees": {"0": 1, "1": 1}, "top": {"d": {"1": [["1"], []]}}},
    {"kind": "dses", "ring": {"ring": "Q"}, "A": 1},
    {"kind": "binary", "ring": {"ring": "Q"}, "degrees": {"0": 1}, "top": {"1": []}},
])
def test_malformed_payloads_raise_parse_error(payload):
    with pytest.raises(ParseError):
        wire.load(payload)


def test_wrong_shape_is_a_validation_failure():
    from binaryk.binary import validate_binary
    payload = {"kind": "binary", "ring": {"ring": "Fp", "p": 5}, "degrees": {"0": 1, "1": 1},
               "top": {"d": {"1": [["1", "2"]]}}, "bot": {"d": {"1": [["1"]]}}}
    _, b = wire.load(payload)
    v = validate_binary(b)
    assert not v and v.witness["degree"] == 1


def test_read_json_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        wire.read_json(bad)
    with pytest.raises(ParseError):
        wire.read_json(tmp_path / "missing.json")


def test_canonical_is_order_independent():
    assert wire.canonical({"b": 1, "a": [1, 2]}) == wire.canonical({"a": [1, 2], "b": 1})
