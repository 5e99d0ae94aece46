import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from corpus import random_masses, random_scheme
from discern.errors import ParseError, ValidationError
from discern.scheme import (
    ClassRecord,
    Profile,
    Scheme,
    parse_scheme,
    profile_of,
    serialize_scheme,
)

MINIMAL = '{"attributes":["p","q"],"classes":[{"name":"A","profile":[0,0]},{"name":"B","profile":[0,1]}]}'


def test_parse_defaults_to_uniform_masses():
    scheme = parse_scheme(MINIMAL)
    assert scheme.k == 2 and scheme.n == 2
    assert scheme.masses == (0.5, 0.5)


def test_parse_keeps_explicit_masses():
    doc = json.loads(MINIMAL)
    doc["masses"] = [0.7, 0.3]
    scheme = parse_scheme(json.dumps(doc))
    assert scheme.masses == (0.7, 0.3)


def test_ragged_profile_rejected_with_path():
    doc = json.loads(MINIMAL)
    doc["classes"][1]["profile"] = [0, 1, 1]
    with pytest.raises(ValidationError) as exc:
        parse_scheme(json.dumps(doc))
    assert exc.value.path == "classes[1].profile"


def test_duplicate_class_names_rejected():
    doc = json.loads(MINIMAL)
    doc["classes"][1]["name"] = "A"
    with pytest.raises(ValidationError):
        parse_scheme(json.dumps(doc))


def test_duplicate_attribute_names_rejected():
    doc = json.loads(MINIMAL)
    doc["attributes"] = ["p", "p"]
    with pytest.raises(ValidationError):
        parse_scheme(json.dumps(doc))


@pytest.mark.parametrize(
    "masses",
    [[0.7], [0.5, -0.5], [0.6, 0.6]],
)
def test_bad_masses_rejected(masses):
    doc = json.loads(MINIMAL)
    doc["masses"] = masses
    with pytest.raises(ValidationError):
        parse_scheme(json.dumps(doc))


def test_renormalize_is_explicit_only():
    doc = json.loads(MINIMAL)
    doc["masses"] = [3, 1]
    with pytest.raises(ValidationError):
        parse_scheme(json.dumps(doc))
    scheme = parse_scheme(json.dumps(doc), renormalize=True)
    assert scheme.masses == (0.75, 0.25)


def test_profile_bit_domain():
    doc = json.loads(MINIMAL)
    doc["classes"][0]["profile"] = [0, 2]
    with pytest.raises(ValidationError):
        parse_scheme(json.dumps(doc))
    doc["classes"][0]["profile"] = [0, "1"]
    with pytest.raises(ParseError):
        parse_scheme(json.dumps(doc))
    doc["classes"][0]["profile"] = [0, True]
    with pytest.raises(ParseError):
        parse_scheme(json.dumps(doc))


@pytest.mark.parametrize(
    "text",
    ["not json", "[1,2]", '{"classes": []}', '{"attributes": [], "classes": [], "extra": 1}'],
)
def test_malformed_documents(text):
    with pytest.raises(ParseError):
        parse_scheme(text)


def test_at_least_one_class_required():
    with pytest.raises(ValidationError):
        parse_scheme('{"attributes": ["p"], "classes": []}')


def test_zero_attributes_allowed():
    scheme = parse_scheme('{"attributes": [], "classes": [{"name": "A", "profile": []}]}')
    assert scheme.n == 0 and scheme.k == 1


def test_profile_of(s2):
    assert profile_of(s2, 0).bits == (0, 0)
    assert profile_of(s2, 3).bits == (1, 1)
    with pytest.raises(IndexError):
        profile_of(s2, 4)
    with pytest.raises(IndexError):
        profile_of(s2, -1)


def test_scheme_is_immutable(s2):
    with pytest.raises(Exception):
        s2.attributes = ()


def test_round_trip_fixtures(s1, s2, s3):
    for scheme in (s1, s2, s3):
        assert parse_scheme(serialize_scheme(scheme)) == scheme


def test_serializer_key_order(s2):
    text = serialize_scheme(s2)
    keys = list(json.loads(text).keys())
    assert keys == ["attributes", "classes", "masses"]


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000), k=st.integers(1, 8), n=st.integers(0, 6), with_masses=st.booleans())
def test_round_trip_random(seed, k, n, with_masses):
    rng = random.Random(seed)
    scheme = random_scheme(rng, k, n, with_masses=with_masses)
    assert parse_scheme(serialize_scheme(scheme)) == scheme


def test_random_masses_sum_within_tolerance():
    rng = random.Random(11)
    for k in (1, 2, 7, 50):
        masses = random_masses(rng, k)
        assert abs(sum(masses) - 1.0) <= 1e-9


def test_direct_construction_validates():
    with pytest.raises(ValidationError):
        Scheme(("a",), (ClassRecord("A", Profile((0, 1))),))
    with pytest.raises(ValidationError):
        Profile((0, 2))
