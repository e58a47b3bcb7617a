import json

import pytest

from anet.fileformat import (
    Assertion,
    ParseError,
    QueryRef,
    ScenarioDocument,
    parse_network,
    parse_scenario,
    serialize_network,
    serialize_scenario,
)
from anet.fixtures import fixture_text, load_network, load_scenario
from anet.ranks import INF
from anet.temporal import unfold


class TestNetworkParsing:
    def test_engine_fixture_topology(self):
        net = load_network("engine.annet")
        assert sorted(net.variables) == ["engine_running", "turn_key"]
        engine = net.variables["engine_running"]
        assert engine.kind == "persistence"
        assert engine.flip_surprise == 1
        fam = net.families["engine_running"]
        assert fam.parents == ("turn_key",)
        assert fam.rows[("true",)] == {"false": 2, "true": 0}
        assert fam.rows[("false",)] == {"false": 0, "true": 0}
        assert dict(net.families["turn_key"].rows[()]) == {"false": 0, "true": 0}

    def test_ysp_fixture_topology(self):
        net = load_network("ysp.annet")
        assert net.variables["fired_gun"].controllable
        assert net.variables["loaded_gun"].controllable
        assert net.variables["loaded_gun"].kind == "persistence"
        assert net.variables["alive"].kind == "persistence"
        assert net.variables["fired_gun"].preconditions == (("holding_gun", "true"),)
        assert net.families["alive"].parents == ("fired_gun", "loaded_gun")
        assert net.families["bang_noise"].parents == ("fired_gun", "loaded_gun")
        assert net.families["fired_gun"].rows[()]["true"] == INF

    def test_missing_row_names_instantiation(self):
        doc = json.loads(fixture_text("engine.annet"))
        doc["families"][0]["rows"] = doc["families"][0]["rows"][:1]
        with pytest.raises(ParseError) as err:
            parse_network(json.dumps(doc))
        assert "missing row" in str(err.value)
        assert "('true',)" in str(err.value)

    def test_malformed_json_located(self):
        with pytest.raises(ParseError) as err:
            parse_network("{\n  \"variables\": [,]\n}")
        diagnostic = err.value.diagnostics[0]
        assert "line 2" in diagnostic.location

    def test_bad_rank_located(self):
        doc = json.loads(fixture_text("engine.annet"))
        doc["families"][0]["rows"][0]["ranks"]["true"] = -1
        with pytest.raises(ParseError) as err:
            parse_network(json.dumps(doc))
        assert "ranks.true" in str(err.value)

    def test_unsupported_version_rejected(self):
        doc = json.loads(fixture_text("engine.annet"))
        doc["format_version"] = 99
        with pytest.raises(ParseError):
            parse_network(json.dumps(doc))


class TestNetworkSerialization:
    @pytest.mark.parametrize("name", ["engine.annet", "ysp.annet"])
    def test_round_trip_byte_identical(self, name):
        text = fixture_text(name)
        assert serialize_network(parse_network(text)) == text

    def test_structural_round_trip_on_unfolded_network(self):
        tn = unfold(load_network("engine.annet"), 3)
        text = serialize_network(tn.network)
        assert parse_network(text) == tn.network

    def test_canonical_ordering_stable_under_permutation(self):
        doc = json.loads(fixture_text("ysp.annet"))
        doc["variables"].reverse()
        doc["families"].reverse()
        for fam in doc["families"]:
            fam["rows"].reverse()
        assert serialize_network(parse_network(json.dumps(doc))) == fixture_text(
            "ysp.annet"
        )

    def test_infinity_serialized_as_literal(self):
        text = fixture_text("ysp.annet")
        assert '"true": "inf"' in text


class TestScenarioParsing:
    def test_ysp_scenario1(self):
        scn = load_scenario("ysp_scenario1.anscn")
        assert scn.network == "ysp.annet"
        assert scn.horizon == 2
        assert (
            Assertion(t=0, var="alive", value="true") in scn.observations
        )
        assert scn.actions == (
            Assertion(t=2, var="fired_gun", value="true", role="action"),
        )
        assert QueryRef(t=2, var="alive") in scn.queries
        assert scn.evidence()["do_fired_gun@2"] == "true"

    def test_empty_scenario_is_valid(self):
        scn = parse_scenario('{"format_version": 1, "horizon": 1}')
        assert scn.observations == ()
        assert scn.queries == ()

    def test_time_out_of_horizon_located(self):
        text = json.dumps(
            {
                "format_version": 1,
                "horizon": 2,
                "observations": [{"t": 5, "var": "alive", "value": "true"}],
            }
        )
        with pytest.raises(ParseError) as err:
            parse_scenario(text)
        assert "observations[0].t" in str(err.value)

    def test_bad_role_located(self):
        text = json.dumps(
            {
                "format_version": 1,
                "horizon": 2,
                "queries": [{"t": 1, "var": "alive", "role": "ghost"}],
            }
        )
        with pytest.raises(ParseError) as err:
            parse_scenario(text)
        assert "queries[0].role" in str(err.value)

    @pytest.mark.parametrize(
        "name",
        [
            "engine_positive.anscn",
            "engine_negative.anscn",
            "ysp_scenario1.anscn",
            "ysp_scenario2.anscn",
        ],
    )
    def test_scenario_round_trip_byte_identical(self, name):
        text = fixture_text(name)
        assert serialize_scenario(parse_scenario(text)) == text


class TestScenarioEditing:
    def test_assert_action_records_do_evidence(self):
        net = load_network("ysp.annet")
        scn = ScenarioDocument(horizon=2)
        scn = scn.with_action(net, 2, "fired_gun", "true")
        assert scn.evidence() == {"do_fired_gun@2": "true"}

    def test_assert_action_overwrites_same_slot(self):
        net = load_network("ysp.annet")
        scn = ScenarioDocument(horizon=2)
        scn = scn.with_action(net, 2, "fired_gun", "true")
        scn = scn.with_action(net, 2, "fired_gun", "idle")
        assert scn.evidence() == {"do_fired_gun@2": "idle"}
        assert len(scn.actions) == 1

    def test_assert_idle_is_explicit(self):
        net = load_network("ysp.annet")
        scn = ScenarioDocument(horizon=1).with_action(net, 1, "loaded_gun", "idle")
        assert scn.actions[0].value == "idle"

    def test_action_beyond_horizon_rejected(self):
        net = load_network("ysp.annet")
        with pytest.raises(ValueError):
            ScenarioDocument(horizon=2).with_action(net, 3, "fired_gun", "true")

    def test_action_on_uncontrollable_rejected(self):
        net = load_network("ysp.annet")
        with pytest.raises(ValueError):
            ScenarioDocument(horizon=2).with_action(net, 1, "alive", "false")

    def test_action_on_unknown_variable_rejected(self):
        net = load_network("ysp.annet")
        with pytest.raises(KeyError):
            ScenarioDocument(horizon=2).with_action(net, 1, "ghost", "true")

    def test_observation_editing(self):
        net = load_network("ysp.annet")
        scn = ScenarioDocument(horizon=2).with_observation(net, 0, "alive", "true")
        scn = scn.with_observation(net, 0, "alive", "false")
        assert scn.evidence() == {"alive@0": "false"}
