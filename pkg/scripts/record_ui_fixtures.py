"""Record real service responses as JSON fixtures for the explorer tests.

The explorer's contract tests replay these instead of computing ranks,
which keeps every displayed bucket traceable to an actual service
response. Run from the repository root after changing the service:

    python scripts/record_ui_fixtures.py
"""

from __future__ import annotations

import json
import pathlib

from fastapi.testclient import TestClient

from anet.fixtures import fixture_text
from anet.service import create_app

OUT = pathlib.Path(__file__).resolve().parent.parent / "frontend" / "test" / "fixtures"

SCENARIO_1 = [
    {"t": 0, "var": "alive", "value": "true"},
    {"t": 0, "var": "loaded_gun", "value": "true"},
]
SHOT = {"t": 2, "var": "fired_gun", "value": "true", "kind": "act"}


def dump(name: str, payload) -> None:
    (OUT / name).write_text(
        json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    print(f"wrote {name}")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    client = TestClient(create_app())

    network_doc = json.loads(fixture_text("ysp.annet"))
    dump("network_ysp.json", network_doc)

    nid = client.post("/networks", json=network_doc).json()["id"]
    sid = client.post("/sessions", json={"network": nid, "horizon": 2}).json()["id"]

    client.put(f"/sessions/{sid}/assertions", json={"add": SCENARIO_1})
    dump("beliefs_initial.json", client.get(f"/sessions/{sid}/beliefs").json())
    dump("session_info.json", client.get(f"/sessions/{sid}").json())

    client.put(f"/sessions/{sid}/assertions", json={"add": [SHOT]})
    dump("beliefs_after_shot.json", client.get(f"/sessions/{sid}/beliefs").json())

    whatif = client.post(
        f"/sessions/{sid}/whatif",
        json={"delta": [{"t": 2, "var": "alive", "value": "true"}]},
    )
    dump("whatif_survival.json", whatif.json())
    # the follow-up fetch that proves the what-if left the session alone
    dump("beliefs_after_whatif.json", client.get(f"/sessions/{sid}/beliefs").json())

    conflict = client.put(
        f"/sessions/{sid}/assertions",
        json={
            "add": [
                {"t": 2, "var": "holding_gun", "value": "true"},
                {"t": 2, "var": "fired_gun", "value": "false"},
            ]
        },
    )
    assert conflict.status_code == 409
    dump("conflict_409.json", conflict.json())


if __name__ == "__main__":
    main()
