"""Seeded random networks, worlds, and evidence for property tests.

Everything takes an explicit random.Random so failures replay exactly.
Generated networks are always valid: rows are renormalized to min 0 and
the parent relation follows a fixed topological order.
"""

from __future__ import annotations

import itertools
import random

from anet.network import Family, Network, Variable
from anet.ranks import INF, Rank


def random_row(
    rng: random.Random,
    values: tuple[str, ...],
    max_rank: int = 3,
    inf_chance: float = 0.15,
) -> dict[str, Rank]:
    row: dict[str, Rank] = {}
    for v in values:
        if rng.random() < inf_chance:
            row[v] = INF
        else:
            row[v] = rng.randint(0, max_rank)
    finite = [r for r in row.values() if r != INF]
    if not finite:
        row[rng.choice(values)] = 0
        finite = [0]
    shift = min(finite)
    return {v: (r if r == INF else r - shift) for v, r in row.items()}


def random_family(
    rng: random.Random,
    child: str,
    parents: tuple[str, ...],
    parent_domains: list[tuple[str, ...]],
    child_values: tuple[str, ...],
    max_rank: int = 3,
    inf_chance: float = 0.15,
) -> Family:
    rows = {
        inst: random_row(rng, child_values, max_rank, inf_chance)
        for inst in itertools.product(*parent_domains)
    }
    return Family(child=child, parents=parents, rows=rows)


def random_network(
    rng: random.Random,
    n_nodes: int,
    max_parents: int = 3,
    max_rank: int = 3,
    inf_chance: float = 0.15,
) -> Network:
    names = [f"v{i}" for i in range(n_nodes)]
    domain = ("false", "true")
    variables = [Variable(name=n, values=domain) for n in names]
    families = []
    for i, name in enumerate(names):
        k = rng.randint(0, min(max_parents, i))
        parents = tuple(sorted(rng.sample(names[:i], k)))
        families.append(
            random_family(
                rng, name, parents, [domain] * k, domain, max_rank, inf_chance
            )
        )
    return Network.build(variables, families)


def rank_zero_world(rng: random.Random, net: Network) -> dict[str, str]:
    """A world with joint rank 0, built greedily in topological order."""
    world: dict[str, str] = {}
    for name in net.topological_order():
        fam = net.families[name]
        inst = tuple(world[p] for p in fam.parents)
        row = fam.rows[inst]
        zeros = [v for v, r in row.items() if r == 0]
        world[name] = rng.choice(zeros)
    return world


def random_consistent_evidence(
    rng: random.Random, net: Network, max_nodes: int = 3
) -> dict[str, str]:
    world = rank_zero_world(rng, net)
    names = sorted(net.variables)
    k = rng.randint(0, min(max_nodes, len(names)))
    return {n: world[n] for n in rng.sample(names, k)}


def brute_posteriors(
    net: Network, evidence: dict[str, str]
) -> tuple[Rank, dict[str, dict[str, Rank]]]:
    """Evidence rank and per (node, value) conditional ranks by full enumeration."""
    joint: dict[str, dict[str, Rank]] = {
        n: {v: INF for v in net.variables[n].values} for n in net.variables
    }
    best: Rank = INF
    for world in net.worlds():
        if any(world[n] != v for n, v in evidence.items()):
            continue
        r = net.joint_rank(world)
        if r == INF:
            continue
        if r < best:
            best = r
        for n in joint:
            cell = joint[n]
            if r < cell[world[n]]:
                cell[world[n]] = r
    if best == INF:
        return INF, joint
    conditional = {
        n: {v: (r - best if r != INF else INF) for v, r in row.items()}
        for n, row in joint.items()
    }
    return best, conditional
