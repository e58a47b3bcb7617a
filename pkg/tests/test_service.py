import json

import pytest
from fastapi.testclient import TestClient

from anet.fixtures import fixture_text
from anet.service import create_app, rank_bucket
from anet.ranks import INF


@pytest.fixture
def client():
    return TestClient(create_app())


@pytest.fixture
def ysp_session(client):
    doc = json.loads(fixture_text("ysp.annet"))
    nid = client.post("/networks", json=doc).json()["id"]
    sid = client.post("/sessions", json={"network": nid, "horizon": 2}).json()["id"]
    return nid, sid


def assert_batch(client, sid, items):
    return client.put(f"/sessions/{sid}/assertions", json={"add": items})


def belief_for(payload, node):
    return next(b for b in payload["beliefs"] if b["node"] == node)


SCENARIO_1 = [
    {"t": 0, "var": "alive", "value": "true"},
    {"t": 0, "var": "loaded_gun", "value": "true"},
    {"t": 2, "var": "fired_gun", "value": "true", "kind": "act"},
]


class TestBuckets:
    def test_rank_buckets(self):
        assert rank_bucket(0) == "plausible"
        assert rank_bucket(1) == "surprising"
        assert rank_bucket(2) == "surprising"
        assert rank_bucket(3) == "very_surprising"
        assert rank_bucket(INF) == "impossible"


class TestNetworks:
    def test_upload_and_fetch(self, client):
        doc = json.loads(fixture_text("engine.annet"))
        r = client.post("/networks", json=doc)
        assert r.status_code == 201
        nid = r.json()["id"]
        fetched = client.get(f"/networks/{nid}")
        assert fetched.status_code == 200
        assert fetched.json() == doc

    def test_invalid_document_is_422(self, client):
        doc = json.loads(fixture_text("engine.annet"))
        doc["families"][0]["rows"][1]["ranks"] = {"false": 2, "true": 1}
        r = client.post("/networks", json=doc)
        assert r.status_code == 422

    def test_unknown_network_is_404(self, client):
        assert client.get("/networks/zzz").status_code == 404
        r = client.post("/sessions", json={"network": "zzz", "horizon": 2})
        assert r.status_code == 404


class TestAssertions:
    def test_shooting_makes_alive_believed_false(self, client, ysp_session):
        _, sid = ysp_session
        r = assert_batch(client, sid, SCENARIO_1)
        assert r.status_code == 200
        assert r.json()["evidence_rank"] == 1
        beliefs = client.get(f"/sessions/{sid}/beliefs", params={"vars": "alive@2"})
        entry = belief_for(beliefs.json(), "alive@2")
        assert entry["ranks"] == {"false": 0, "true": 1}
        assert entry["believed"] == "false"
        assert entry["buckets"]["true"] == "surprising"

    def test_batch_is_atomic_on_conflict(self, client, ysp_session):
        _, sid = ysp_session
        assert_batch(client, sid, SCENARIO_1)
        # forcing the gun to fire while observing it unfired is impossible
        r = assert_batch(
            client,
            sid,
            [
                {"t": 2, "var": "holding_gun", "value": "true"},
                {"t": 2, "var": "fired_gun", "value": "false"},
            ],
        )
        assert r.status_code == 409
        conflict = r.json()["detail"]["conflict"]
        assert "do_fired_gun@2" in conflict
        assert "fired_gun@2" in conflict
        assert "holding_gun@2" in conflict
        # rejected atomically: the session still answers as before
        beliefs = client.get(f"/sessions/{sid}/beliefs", params={"vars": "alive@2"})
        assert belief_for(beliefs.json(), "alive@2")["ranks"] == {"false": 0, "true": 1}

    def test_remove_assertion(self, client, ysp_session):
        _, sid = ysp_session
        assert_batch(client, sid, SCENARIO_1)
        r = client.put(
            f"/sessions/{sid}/assertions",
            json={"remove": [{"t": 2, "var": "fired_gun", "kind": "act"}]},
        )
        assert r.status_code == 200
        beliefs = client.get(f"/sessions/{sid}/beliefs", params={"vars": "alive@2"})
        assert belief_for(beliefs.json(), "alive@2")["believed"] == "true"

    def test_malformed_payload_is_422(self, client, ysp_session):
        _, sid = ysp_session
        r = client.put(f"/sessions/{sid}/assertions", json={"add": [{"t": "x"}]})
        assert r.status_code == 422
        r = assert_batch(client, sid, [{"t": 9, "var": "alive", "value": "true"}])
        assert r.status_code == 422
        r = assert_batch(client, sid, [{"t": 1, "var": "ghost", "value": "true"}])
        assert r.status_code == 422
        r = assert_batch(
            client, sid, [{"t": 1, "var": "alive", "value": "false", "kind": "act"}]
        )
        assert r.status_code == 422

    def test_asserted_cells_marked(self, client, ysp_session):
        _, sid = ysp_session
        assert_batch(client, sid, SCENARIO_1)
        beliefs = client.get(f"/sessions/{sid}/beliefs", params={"vars": "alive@0"})
        entry = belief_for(beliefs.json(), "alive@0")
        assert entry["asserted"] == {"value": "true", "kind": "observe"}

    def test_auxiliary_nodes_observable_via_role(self, client, ysp_session):
        _, sid = ysp_session
        assert_batch(client, sid, SCENARIO_1)
        r = assert_batch(
            client,
            sid,
            [{"t": 2, "var": "alive", "value": "ω^2", "role": "suppressor"}],
        )
        assert r.status_code == 200
        beliefs = client.get(
            f"/sessions/{sid}/beliefs", params={"vars": "S(alive)@2,alive@2"}
        ).json()
        assert belief_for(beliefs, "S(alive)@2")["asserted"]["value"] == "ω^2"
        # with the death mechanism suppressed, the victim persists
        assert belief_for(beliefs, "alive@2")["believed"] == "true"


class TestBeliefs:
    def test_default_grid_covers_all_base_vars_and_slices(self, client, ysp_session):
        _, sid = ysp_session
        payload = client.get(f"/sessions/{sid}/beliefs").json()
        nodes = {b["node"] for b in payload["beliefs"]}
        assert len(nodes) == 5 * 3
        assert "bang_noise@1" in nodes

    def test_var_selector_expands_bare_names(self, client, ysp_session):
        _, sid = ysp_session
        payload = client.get(
            f"/sessions/{sid}/beliefs", params={"vars": "alive,loaded_gun@1"}
        ).json()
        nodes = [b["node"] for b in payload["beliefs"]]
        assert nodes == ["alive@0", "alive@1", "alive@2", "loaded_gun@1"]

    def test_unknown_var_is_422(self, client, ysp_session):
        _, sid = ysp_session
        r = client.get(f"/sessions/{sid}/beliefs", params={"vars": "ghost"})
        assert r.status_code == 422


class TestWhatIf:
    def test_survival_delta_shows_unloading(self, client, ysp_session):
        _, sid = ysp_session
        assert_batch(client, sid, SCENARIO_1)
        r = client.post(
            f"/sessions/{sid}/whatif",
            json={
                "delta": [{"t": 2, "var": "alive", "value": "true"}],
                "queries": [{"t": 2, "var": "loaded_gun"}],
            },
        )
        assert r.status_code == 200
        body = r.json()
        hypo = belief_for(body["hypothetical"], "loaded_gun@2")
        assert hypo["believed"] == "false"
        base = belief_for(body["base"], "loaded_gun@2")
        assert base["believed"] == "true"
        diffs = next(d for d in body["diffs"] if d["node"] == "loaded_gun@2")
        assert diffs["deltas"]["true"] == 1
        assert diffs["deltas"]["false"] == -1

    def test_whatif_leaves_session_untouched(self, client, ysp_session):
        _, sid = ysp_session
        assert_batch(client, sid, SCENARIO_1)
        before = client.get(f"/sessions/{sid}/beliefs").json()
        client.post(
            f"/sessions/{sid}/whatif",
            json={"delta": [{"t": 2, "var": "alive", "value": "true"}]},
        )
        after = client.get(f"/sessions/{sid}/beliefs").json()
        assert before == after

    def test_inconsistent_delta_reports_branch(self, client, ysp_session):
        _, sid = ysp_session
        assert_batch(client, sid, SCENARIO_1)
        r = client.post(
            f"/sessions/{sid}/whatif",
            json={
                "delta": [
                    {"t": 2, "var": "holding_gun", "value": "true"},
                    {"t": 2, "var": "fired_gun", "value": "false"},
                ],
                "queries": [{"t": 2, "var": "alive"}],
            },
        )
        assert r.status_code == 200
        body = r.json()
        assert "error" in body["hypothetical"]
        assert "beliefs" in body["base"]
        assert body["diffs"] is None


class TestSessions:
    def test_isolation(self, client, ysp_session):
        nid, sid1 = ysp_session
        sid2 = client.post("/sessions", json={"network": nid, "horizon": 2}).json()["id"]
        assert_batch(client, sid1, SCENARIO_1)
        b2 = client.get(f"/sessions/{sid2}/beliefs", params={"vars": "alive@2"}).json()
        assert belief_for(b2, "alive@2")["ranks"] == {"false": 0, "true": 0}

    def test_delete_then_404(self, client, ysp_session):
        _, sid = ysp_session
        assert client.delete(f"/sessions/{sid}").status_code == 204
        assert client.get(f"/sessions/{sid}").status_code == 404
        assert client.delete(f"/sessions/{sid}").status_code == 404

    def test_snapshot_round_trip(self, client, ysp_session):
        nid, sid = ysp_session
        assert_batch(client, sid, SCENARIO_1)
        snapshot = client.get(f"/sessions/{sid}/snapshot").json()
        restored = client.post(
            "/sessions",
            json={"network": nid, "horizon": 2, "snapshot": snapshot},
        )
        assert restored.status_code == 201
        sid2 = restored.json()["id"]
        b1 = client.get(f"/sessions/{sid}/beliefs").json()
        b2 = client.get(f"/sessions/{sid2}/beliefs").json()
        assert b1 == b2

    def test_session_info_lists_assertions(self, client, ysp_session):
        _, sid = ysp_session
        assert_batch(client, sid, SCENARIO_1)
        info = client.get(f"/sessions/{sid}").json()
        assert info["horizon"] == 2
        assert info["evidence_rank"] == 1
        kinds = {(a["var"], a["t"]): a["kind"] for a in info["assertions"]}
        assert kinds[("fired_gun", 2)] == "act"
        assert kinds[("alive", 0)] == "observe"


def test_cli_query_matches_http_beliefs(client, ysp_session):
    """The CLI and the service answer from the same engine."""
    from click.testing import CliRunner

    from anet.cli import main
    from anet.fixtures import fixture_path

    _, sid = ysp_session
    assert_batch(client, sid, SCENARIO_1)
    http_entry = belief_for(
        client.get(f"/sessions/{sid}/beliefs", params={"vars": "alive@2"}).json(),
        "alive@2",
    )
    result = CliRunner().invoke(
        main,
        [
            "query",
            str(fixture_path("ysp.annet")),
            str(fixture_path("ysp_scenario1.anscn")),
        ],
    )
    line = next(l for l in result.output.splitlines() if l.startswith("alive@2"))
    assert f"false={http_entry['ranks']['false']}" in line
    assert f"true={http_entry['ranks']['true']}" in line
