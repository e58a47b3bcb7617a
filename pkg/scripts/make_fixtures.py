"""Regenerate the bundled .annet / .anscn fixtures in canonical form.

Run from the repository root:  python scripts/make_fixtures.py
"""

from __future__ import annotations

import pathlib

from anet.fileformat import (
    Assertion,
    ExplanationBlock,
    QueryRef,
    ScenarioDocument,
    WhatIfBlock,
    serialize_network,
    serialize_scenario,
)
from anet.network import Family, Network, Variable, ignorance_prior, prior_family
from anet.ranks import INF

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "anet" / "fixtures"


def engine_network() -> Network:
    variables = [
        Variable("turn_key"),
        Variable("engine_running", kind="persistence", flip_surprise=1),
    ]
    families = [
        ignorance_prior("turn_key", ("false", "true")),
        Family(
            child="engine_running",
            parents=("turn_key",),
            rows={
                ("false",): {"false": 0, "true": 0},
                ("true",): {"false": 2, "true": 0},
            },
        ),
    ]
    return Network.build(variables, families).require_valid()


def ysp_network() -> Network:
    ignorance = {"false": 0, "true": 0}
    variables = [
        Variable("holding_gun"),
        Variable(
            "fired_gun",
            controllable=True,
            preconditions=(("holding_gun", "true"),),
            action_surprise=1,
        ),
        Variable(
            "loaded_gun",
            kind="persistence",
            controllable=True,
            preconditions=(("holding_gun", "true"),),
            flip_surprise=2,
            action_surprise=1,
        ),
        Variable("alive", kind="persistence", flip_surprise=2),
        Variable("bang_noise"),
    ]
    families = [
        # Modeling choices for this fixture: the gun is believed held
        # (surprise 5 otherwise) and never fires without the firing action.
        prior_family("holding_gun", {"false": 5, "true": 0}),
        prior_family("fired_gun", {"false": 0, "true": INF}),
        ignorance_prior("loaded_gun", ("false", "true")),
        Family(
            child="alive",
            parents=("fired_gun", "loaded_gun"),
            rows={
                ("false", "false"): dict(ignorance),
                ("false", "true"): dict(ignorance),
                ("true", "false"): dict(ignorance),
                ("true", "true"): {"false": 0, "true": 2},
            },
        ),
        Family(
            child="bang_noise",
            parents=("fired_gun", "loaded_gun"),
            rows={
                ("false", "false"): dict(ignorance),
                ("false", "true"): dict(ignorance),
                ("true", "false"): dict(ignorance),
                ("true", "true"): {"false": 2, "true": 0},
            },
        ),
    ]
    return Network.build(variables, families).require_valid()


def engine_positive() -> ScenarioDocument:
    return ScenarioDocument(
        horizon=3,
        network="engine.annet",
        observations=(Assertion(t=0, var="turn_key", value="true"),),
        queries=tuple(QueryRef(t=t, var="engine_running") for t in range(4)),
        comment="Turn the key at 0 and nothing else: the engine is believed "
        "running at every slice.",
    )


def engine_negative() -> ScenarioDocument:
    obs = [Assertion(t=t, var="turn_key", value="true") for t in range(4)]
    obs += [Assertion(t=t, var="engine_running", value="false") for t in range(3)]
    return ScenarioDocument(
        horizon=3,
        network="engine.annet",
        observations=tuple(obs),
        queries=(QueryRef(t=3, var="engine_running"),),
        comment="Three failed starts in a row: a fourth failure is now the "
        "believed outcome.",
    )


def ysp_scenario1() -> ScenarioDocument:
    return ScenarioDocument(
        horizon=2,
        network="ysp.annet",
        observations=(
            Assertion(t=0, var="alive", value="true"),
            Assertion(t=0, var="loaded_gun", value="true"),
        ),
        actions=(Assertion(t=2, var="fired_gun", value="true", role="action"),),
        queries=(
            QueryRef(t=2, var="alive"),
            QueryRef(t=2, var="bang_noise"),
        ),
        whatifs=(
            WhatIfBlock(
                delta=(Assertion(t=2, var="alive", value="true"),),
                queries=(QueryRef(t=2, var="loaded_gun"),),
            ),
        ),
        comment="Projection: loaded gun and live victim at 0, shooting at 2.",
    )


def ysp_scenario2() -> ScenarioDocument:
    return ScenarioDocument(
        horizon=2,
        network="ysp.annet",
        observations=(
            Assertion(t=0, var="alive", value="true"),
            Assertion(t=0, var="loaded_gun", value="true"),
            Assertion(t=2, var="alive", value="true"),
        ),
        actions=(Assertion(t=2, var="fired_gun", value="true", role="action"),),
        queries=(
            QueryRef(t=2, var="loaded_gun"),
            QueryRef(t=1, var="loaded_gun"),
        ),
        explanations=(
            ExplanationBlock(
                targets=(
                    QueryRef(t=1, var="loaded_gun", role="action"),
                    QueryRef(t=2, var="loaded_gun", role="action"),
                )
            ),
        ),
        comment="Abduction: the victim survived the shooting, so the gun "
        "must have been unloaded, by an action at 1 or 2.",
    )


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "engine.annet").write_text(
        serialize_network(
            engine_network(),
            comment="Key/engine family; the engine is a persistence with "
            "flip surprise 1, the key an event with an ignorance prior.",
        ),
        encoding="utf-8",
    )
    (OUT / "ysp.annet").write_text(
        serialize_network(
            ysp_network(),
            comment="Shooting domain. Firing and loading are controllable "
            "with holding_gun as precondition; loaded_gun and alive persist "
            "with flip surprise 2; actions carry surprise 1. The holding_gun "
            "and fired_gun priors are modeling choices of this fixture.",
        ),
        encoding="utf-8",
    )
    for name, scn in [
        ("engine_positive.anscn", engine_positive()),
        ("engine_negative.anscn", engine_negative()),
        ("ysp_scenario1.anscn", ysp_scenario1()),
        ("ysp_scenario2.anscn", ysp_scenario2()),
    ]:
        (OUT / name).write_text(serialize_scenario(scn), encoding="utf-8")
    print(f"wrote fixtures to {OUT}")


if __name__ == "__main__":
    main()
