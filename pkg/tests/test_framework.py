import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cafkit import (
    AttackGraph,
    CAF,
    Interval,
    InvalidFrameworkError,
    WAF,
    attackers,
    parse_caf,
    parse_degrees,
    parse_waf,
    serialize_caf,
)

from helpers import CHAIN, DIAMOND


# --- parsing ---------------------------------------------------------------

def test_parse_applies_defaults():
    caf = parse_caf('{"arguments":[{"id":"a"}],"attacks":[]}')
    assert caf.intervals["a"] == Interval(0.0, 1.0)
    assert caf.costs["a"] == 1.0


def test_parse_two_argument_chain():
    doc = (
        '{"arguments":[{"id":"a","interval":[0.8,1.0]},'
        '{"id":"b","interval":[0.5,1.0]}],"attacks":[["a","b"]]}'
    )
    caf = parse_caf(doc)
    assert caf.graph.arguments == ("a", "b")
    assert caf.graph.attacks == (("a", "b"),)
    assert caf.intervals["a"] == Interval(0.8, 1.0)
    assert caf.intervals["b"] == Interval(0.5, 1.0)


def test_parse_rejects_inverted_interval():
    with pytest.raises(InvalidFrameworkError, match="'a'"):
        parse_caf('{"arguments":[{"id":"a","interval":[0.6,0.4]}],"attacks":[]}')


def test_parse_rejects_malformed_json():
    with pytest.raises(InvalidFrameworkError, match="malformed JSON"):
        parse_caf("{nope")


def test_parse_rejects_unknown_attack_endpoint():
    with pytest.raises(InvalidFrameworkError, match="'b'"):
        parse_caf('{"arguments":[{"id":"a"}],"attacks":[["a","b"]]}')


def test_parse_rejects_nonpositive_cost():
    with pytest.raises(InvalidFrameworkError, match="'a'"):
        parse_caf('{"arguments":[{"id":"a","cost":0}],"attacks":[]}')


def test_parse_rejects_duplicate_ids_and_attacks():
    with pytest.raises(InvalidFrameworkError, match="duplicate argument"):
        parse_caf('{"arguments":[{"id":"a"},{"id":"a"}],"attacks":[]}')
    with pytest.raises(InvalidFrameworkError, match="duplicate attack"):
        parse_caf(
            '{"arguments":[{"id":"a"},{"id":"b"}],'
            '"attacks":[["a","b"],["a","b"]]}'
        )


def test_parse_warns_on_unknown_keys():
    with pytest.warns(UserWarning, match="label"):
        parse_caf('{"arguments":[{"id":"a","label":"?"}],"attacks":[]}')


def test_parse_accepts_self_attack():
    caf = parse_caf('{"arguments":[{"id":"a"}],"attacks":[["a","a"]]}')
    assert attackers(caf.graph, "a") == ("a",)


def test_parse_waf_defaults_weights_to_one():
    waf = parse_waf('{"arguments":[{"id":"a"},{"id":"b","weight":0.25}],"attacks":[]}')
    assert waf.weights == {"a": 1.0, "b": 0.25}


def test_parse_degrees_requires_every_degree():
    graph, degrees = parse_degrees(
        '{"arguments":[{"id":"a","degree":0.9},{"id":"b","degree":0.6}],'
        '"attacks":[["a","b"]]}'
    )
    assert degrees == {"a": 0.9, "b": 0.6}
    with pytest.raises(InvalidFrameworkError, match="missing degree"):
        parse_degrees('{"arguments":[{"id":"a"}],"attacks":[]}')


# --- serialization ---------------------------------------------------------

def test_serialize_single_argument_mentions_full_interval():
    caf = parse_caf('{"arguments":[{"id":"a"}],"attacks":[]}')
    assert '"interval":[0.0,1.0]' in serialize_caf(caf)


def test_serialize_emits_integer_costs():
    caf = parse_caf('{"arguments":[{"id":"a","cost":3}],"attacks":[]}')
    assert '"cost":3' in serialize_caf(caf)


def test_serialize_round_trip_on_chain():
    doc = (
        '{"arguments":[{"id":"a","interval":[0.8,1.0]},'
        '{"id":"b","interval":[0.5,1.0]}],"attacks":[["a","b"]]}'
    )
    caf = parse_caf(doc)
    assert parse_caf(serialize_caf(caf)) == caf


# --- attackers -------------------------------------------------------------

def test_attackers_of_shared_target():
    assert set(attackers(DIAMOND, "c")) == {"a", "b"}


def test_attackers_of_unattacked_argument():
    graph = AttackGraph(("d",), ())
    assert attackers(graph, "d") == ()


def test_attackers_of_mutual_pair():
    graph = AttackGraph(("a", "b"), (("a", "b"), ("b", "a")))
    assert attackers(graph, "a") == ("b",)
    assert attackers(graph, "b") == ("a",)


def test_attackers_rejects_unknown_argument():
    with pytest.raises(InvalidFrameworkError):
        attackers(CHAIN, "zz")


# --- constructors ----------------------------------------------------------

def test_interval_validation():
    with pytest.raises(InvalidFrameworkError):
        Interval(0.6, 0.4)
    with pytest.raises(InvalidFrameworkError):
        Interval(-0.1, 0.5)
    with pytest.raises(InvalidFrameworkError):
        Interval(0.5, 1.5)
    assert Interval(0.25, 0.75).width == 0.5


def test_waf_requires_total_weights_in_range():
    with pytest.raises(InvalidFrameworkError, match="missing weight"):
        WAF(CHAIN, {"a": 0.5})
    with pytest.raises(InvalidFrameworkError, match="outside"):
        WAF(CHAIN, {"a": 0.5, "b": 1.5})


def test_caf_requires_interval_per_argument():
    with pytest.raises(InvalidFrameworkError, match="missing interval"):
        CAF(CHAIN, {"a": Interval(0, 1)})


def test_caf_fills_default_costs():
    caf = CAF(CHAIN, {"a": Interval(0, 1), "b": Interval(0, 1)}, {"a": 2.0})
    assert caf.costs == {"a": 2.0, "b": 1.0}


# --- properties ------------------------------------------------------------

@st.composite
def cafs(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    ids = tuple(f"x{i}" for i in range(n))
    pairs = [(s, t) for s in ids for t in ids]
    chosen = draw(
        st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))
    )
    intervals = {}
    costs = {}
    for a in ids:
        lo = draw(st.floats(min_value=0.0, max_value=1.0))
        hi = draw(st.floats(min_value=lo, max_value=1.0))
        intervals[a] = Interval(lo, hi)
        costs[a] = draw(st.one_of(st.just(1.0), st.integers(1, 9).map(float)))
    return CAF(AttackGraph(ids, tuple(chosen)), intervals, costs)


@given(cafs())
@settings(max_examples=80, deadline=None)
def test_serialization_round_trip_property(caf):
    assert parse_caf(serialize_caf(caf)) == caf


@given(cafs())
@settings(max_examples=40, deadline=None)
def test_parsed_interval_containment(caf):
    doc = json.loads(serialize_caf(caf))
    reparsed = parse_caf(doc)
    for a in reparsed.graph.arguments:
        iv = reparsed.intervals[a]
        assert 0.0 <= iv.lo <= iv.hi <= 1.0


@given(cafs())
@settings(max_examples=40, deadline=None)
def test_attackers_matches_attack_relation(caf):
    graph = caf.graph
    for a in graph.arguments:
        srcs = attackers(graph, a)
        assert set(srcs) <= set(graph.arguments)
        for b in graph.arguments:
            assert (b in srcs) == ((b, a) in graph.attacks)
