import random

import pytest

from corpus import random_scenario
from discern.errors import ParseError
from discern.resolver import (
    ConfigInstance,
    ResolveResult,
    ResolveScenario,
    getattribute,
    normalize,
    parse_scenario,
    resolution_query_count,
    resolve,
    resolved_value,
    well_formed,
)


@pytest.fixture
def hit_scenario():
    return ResolveScenario(
        registry={2: 1},
        mro=[2],
        scopes=["s0"],
        ctx={"s0": [ConfigInstance(1, 5)]},
    )


def test_well_formed_examples():
    assert well_formed({2: 1})
    assert not well_formed({2: 1, 1: 0})
    assert well_formed({})


def test_normalize_examples():
    assert normalize({2: 1}, 2) == 1
    assert normalize({2: 1}, 3) == 3
    assert normalize({2: 1}, 1) == 1


def test_normalize_idempotent_on_well_formed():
    rng = random.Random(50)
    for _ in range(200):
        registry = {rng.randint(0, 15): rng.randint(0, 15) for _ in range(rng.randint(0, 5))}
        if not well_formed(registry):
            continue
        for t in range(16):
            assert normalize(registry, normalize(registry, t)) == normalize(registry, t)


def test_resolve_hit(hit_scenario):
    assert resolve(hit_scenario) == ResolveResult(value=5, scope="s0", source_type=1)


def test_resolve_zero_sentinel_skipped(hit_scenario):
    scenario = ResolveScenario(
        registry={2: 1}, mro=[2], scopes=["s0"], ctx={"s0": [ConfigInstance(1, 0)]}
    )
    assert resolve(scenario) is None


def test_resolve_empty_mro():
    assert resolve(ResolveScenario(mro=[], scopes=["s0", "s1"])) is None


def test_resolve_scope_order_beats_mro_order():
    # Outer loop is scopes: a match in the first scope for a later mro type
    # wins over a match in a later scope for an earlier mro type.
    scenario = ResolveScenario(
        registry={},
        mro=[3, 4],
        scopes=["inner", "outer"],
        ctx={"inner": [ConfigInstance(4, 9)], "outer": [ConfigInstance(3, 8)]},
    )
    result = resolve(scenario)
    assert result == ResolveResult(value=9, scope="inner", source_type=4)


def test_first_matching_config_shadows_later_ones():
    scenario = ResolveScenario(
        mro=[1],
        scopes=["s0"],
        ctx={"s0": [ConfigInstance(1, 7), ConfigInstance(1, 8)]},
    )
    assert resolve(scenario).value == 7


def test_zero_valued_match_shadows_nothing_behind_it():
    # find-first semantics: a 0-valued entry for the type hides a later
    # nonzero entry of the same type within the same scope probe.
    scenario = ResolveScenario(
        mro=[1],
        scopes=["s0"],
        ctx={"s0": [ConfigInstance(1, 0), ConfigInstance(1, 8)]},
    )
    assert resolve(scenario) is None


def test_unknown_scope_is_empty(hit_scenario):
    scenario = ResolveScenario(mro=[1], scopes=["ghost"], ctx={})
    assert resolve(scenario) is None


def test_query_count_examples(hit_scenario):
    assert resolution_query_count(hit_scenario) == 1
    exhaustion = ResolveScenario(mro=[1, 2], scopes=["a", "b", "c"], ctx={})
    assert resolution_query_count(exhaustion) == 6
    assert resolution_query_count(ResolveScenario(mro=[1, 2], scopes=[])) == 0


def test_getattribute(hit_scenario):
    assert getattribute(hit_scenario, ConfigInstance(2, 7), True) == 7
    assert getattribute(hit_scenario, ConfigInstance(2, 0), False) == 0
    assert getattribute(hit_scenario, ConfigInstance(2, 0), True) == 5


def test_strict_mode_rejects_ill_formed():
    scenario = ResolveScenario(registry={2: 1, 1: 0}, mro=[2], scopes=["s0"], ctx={})
    assert resolve(scenario) is None  # warn-only by default
    with pytest.raises(ValueError):
        resolve(scenario, strict=True)


def test_provenance_distinguishes_equal_values():
    # Two configs carry the same value from different types; source_type
    # tells them apart even though any value-only view cannot.
    left = ResolveScenario(mro=[1], scopes=["s0"], ctx={"s0": [ConfigInstance(1, 5)]})
    right = ResolveScenario(mro=[2], scopes=["s0"], ctx={"s0": [ConfigInstance(2, 5)]})
    a, b = resolve(left), resolve(right)
    assert a.value == b.value
    assert a.source_type != b.source_type


def fuzz_scenarios(count=1000, seed=1234):
    rng = random.Random(seed)
    return [random_scenario(rng) for _ in range(count)]


def test_fuzz_determinism_and_contracts():
    for scenario in fuzz_scenarios(400):
        first = resolve(scenario)
        second = resolve(scenario)
        assert first == second
        scalar = resolved_value(scenario)
        if first is None:
            assert scalar == 0
        else:
            assert first.value != 0
            assert scalar == first.value
        assert resolution_query_count(scenario) <= len(scenario.scopes) * len(scenario.mro)


def test_fuzz_completeness_biconditional():
    for scenario in fuzz_scenarios(400, seed=77):
        result = resolve(scenario)
        scalar = resolved_value(scenario)
        for v in range(10):
            holds = (v == 0 and result is None) or (result is not None and result.value == v)
            assert (scalar == v) == holds


def test_config_instance_validation():
    with pytest.raises(ValueError):
        ConfigInstance(-1, 0)
    with pytest.raises(ValueError):
        ConfigInstance(0, -2)


def test_parse_scenario_round_trip(fixtures_dir):
    text = (fixtures_dir / "scenario1.json").read_text()
    scenario, obj, lazy = parse_scenario(text)
    assert scenario.registry == {2: 1}
    assert scenario.mro == [2]
    assert scenario.scopes == ["s0"]
    assert scenario.ctx == {"s0": [ConfigInstance(1, 5)]}
    assert obj == ConfigInstance(2, 0)
    assert lazy is True


@pytest.mark.parametrize(
    "text",
    [
        "[]",
        '{"registry": []}',
        '{"mro": ["x"]}',
        '{"ctx": {"s0": [{"typ": 1}]}}',
        '{"obj": {"typ": 1}}',
        '{"lazy": "yes"}',
        '{"registry": {"a": 1}}',
    ],
)
def test_parse_scenario_errors(text):
    with pytest.raises(ParseError):
        parse_scenario(text)
