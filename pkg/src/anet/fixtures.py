"""Bundled example networks and scenarios.

engine.annet         a key/engine family with a persistent engine state
ysp.annet            the shooting domain: controllable firing and loading
                     gated on holding the gun, with a persistent victim
engine_positive.anscn   turn the key once, watch the engine keep running
engine_negative.anscn   repeated failed starts, then ask about the next try
ysp_scenario1.anscn     loaded gun, live victim, shoot at 2: projection
ysp_scenario2.anscn     the victim survives: abduction over unload actions

Regenerate with scripts/make_fixtures.py after editing the builders there.
"""

from __future__ import annotations

from pathlib import Path

from .fileformat import ScenarioDocument, parse_network, parse_scenario
from .network import Network

FIXTURES_DIR = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    path = FIXTURES_DIR / name
    if not path.exists():
        known = ", ".join(sorted(p.name for p in FIXTURES_DIR.iterdir()))
        raise FileNotFoundError(f"no fixture {name!r}; bundled: {known}")
    return path


def fixture_text(name: str) -> str:
    return fixture_path(name).read_text(encoding="utf-8")


def load_network(name: str) -> Network:
    return parse_network(fixture_text(name))


def load_scenario(name: str) -> ScenarioDocument:
    return parse_scenario(fixture_text(name))
