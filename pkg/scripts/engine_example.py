"""Walk the key/engine story end to end and print the posteriors.

Positive direction: turn the key once and the engine is believed running
at every later slice. Negative direction: after three observed failures,
a fourth failure is the believed outcome even with the key turned again.
"""

from __future__ import annotations

from anet.fixtures import load_network, load_scenario
from anet.inference import eliminate
from anet.ranks import INF
from anet.temporal import unfold


def show(title: str, scenario_name: str) -> None:
    scn = load_scenario(scenario_name)
    net = load_network(scn.network)
    tn = unfold(net, scn.horizon, scn.actions_from_slice)
    nodes = scn.query_nodes()
    posteriors = eliminate(tn.network, scn.evidence(), nodes)
    print(f"== {title}")
    print(f"   evidence: {scn.evidence()}")
    for node in nodes:
        ranks = {
            v: ("inf" if r == INF else r) for v, r in posteriors[node].ranks.items()
        }
        believed = posteriors[node].believed_value()
        mark = f"  -> believed {believed}" if believed else ""
        print(f"   {node}: {ranks}{mark}")
    print()


def main() -> None:
    show("turn the key at 0, ask at every slice", "engine_positive.anscn")
    show("three failed starts, ask about the fourth", "engine_negative.anscn")


if __name__ == "__main__":
    main()
