"""Exact rank inference over networks.

Two independent routes compute the same quantity and are tested against
each other:

  enumerate_rank   depth-first enumeration of worlds with saturation and
                   bound pruning; the semantic reference, usable while the
                   world count stays oracle-sized.
  eliminate        min-sum variable elimination over sparse factors. Ranks
                   live in the (min, +) semiring, so the usual sum-product
                   recursions apply with min for marginalization and + for
                   combination. Elimination order is min-fill with a
                   lexicographic tie-break, making outputs reproducible.

A conditional rank is the difference of two unconditional minima:
rank(phi | ev) = rank(phi and ev) - rank(ev). Posteriors therefore come
out normalized (their minimum is 0) without any mid-elimination
renormalization. Entries at INF never enter a factor: factors store only
finite entries and treat missing keys as impossible.

Evidence whose own rank is INF is incoherent and raises rather than
producing an all-INF posterior.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .network import Network
from .ranks import INF, InconsistentEvidenceError, Predicate, Rank, rank_sub

Evidence = Mapping[str, str]


@dataclass(frozen=True)
class Posterior:
    """Normalized conditional ranks over one node's values."""

    node: str
    ranks: Mapping[str, Rank]

    def believed_value(self) -> str | None:
        """The single rank-0 value if every rival is surprising, else None."""
        zeros = [v for v, r in self.ranks.items() if r == 0]
        return zeros[0] if len(zeros) == 1 else None

    def rank(self, value: str) -> Rank:
        return self.ranks[value]


def check_evidence(net: Network, evidence: Evidence) -> None:
    for node, value in evidence.items():
        if node not in net.variables:
            raise KeyError(f"evidence references unknown node {node}")
        if value not in net.variables[node].values:
            raise ValueError(f"evidence value {value!r} is not a value of {node}")


# -- enumeration oracle -------------------------------------------------------


def enumerate_rank(
    net: Network,
    evidence: Evidence,
    phi: Predicate | None = None,
    max_worlds: int = 1 << 22,
) -> Rank:
    """Conditional rank of `phi` given `evidence` by world enumeration.

    Walks variables in topological order accumulating partial sums,
    pruning saturated or already-beaten branches; exact, not approximate.
    """
    check_evidence(net, evidence)
    order = net.topological_order()
    n_worlds = 1
    for name in order:
        if name not in evidence:
            n_worlds *= len(net.variables[name].values)
        if n_worlds > max_worlds:
            raise ValueError(f"world count exceeds the enumeration bound {max_worlds}")

    families = [net.families[name] for name in order]
    best_ev: Rank = INF
    best_phi: Rank = INF
    world: dict[str, str] = {}

    def walk(i: int, partial: Rank) -> None:
        nonlocal best_ev, best_phi
        if partial >= best_phi and partial >= best_ev:
            return
        if i == len(order):
            if partial < best_ev:
                best_ev = partial
            if (phi is None or phi(world)) and partial < best_phi:
                best_phi = partial
            return
        name = order[i]
        fam = families[i]
        inst = tuple(world[p] for p in fam.parents)
        row = fam.rows[inst]
        values = (evidence[name],) if name in evidence else net.variables[name].values
        for value in values:
            entry = row[value]
            if entry == INF:
                continue
            world[name] = value
            walk(i + 1, partial + entry)
        world.pop(name, None)

    walk(0, 0)
    if best_ev == INF:
        raise InconsistentEvidenceError("evidence itself has rank infinity")
    if phi is None:
        return 0
    if best_phi == INF:
        return INF
    return rank_sub(best_phi, best_ev)


# -- sparse min-sum factors ---------------------------------------------------


@dataclass
class _Factor:
    scope: tuple[str, ...]
    entries: dict[tuple[str, ...], Rank]

    def restrict(self, evidence: Evidence) -> "_Factor":
        bound = [i for i, v in enumerate(self.scope) if v in evidence]
        if not bound:
            return self
        keep = [i for i in range(len(self.scope)) if i not in bound]
        out: dict[tuple[str, ...], Rank] = {}
        for key, rank in self.entries.items():
            if all(key[i] == evidence[self.scope[i]] for i in bound):
                sub = tuple(key[i] for i in keep)
                if rank < out.get(sub, INF):
                    out[sub] = rank
        return _Factor(tuple(self.scope[i] for i in keep), out)


def _family_factor(net: Network, child: str) -> _Factor:
    fam = net.families[child]
    scope = fam.parents + (child,)
    entries: dict[tuple[str, ...], Rank] = {}
    for inst, row in fam.rows.items():
        for value, rank in row.items():
            if rank != INF:
                entries[inst + (value,)] = rank
    return _Factor(scope, entries)


def _combine(a: _Factor, b: _Factor) -> _Factor:
    shared = tuple(v for v in a.scope if v in b.scope)
    b_only = tuple(i for i, v in enumerate(b.scope) if v not in a.scope)
    scope = a.scope + tuple(b.scope[i] for i in b_only)

    index: dict[tuple[str, ...], list[tuple[tuple[str, ...], Rank]]] = {}
    shared_pos_b = tuple(b.scope.index(v) for v in shared)
    for key, rank in b.entries.items():
        sig = tuple(key[i] for i in shared_pos_b)
        index.setdefault(sig, []).append((tuple(key[i] for i in b_only), rank))

    shared_pos_a = tuple(a.scope.index(v) for v in shared)
    entries: dict[tuple[str, ...], Rank] = {}
    for key, rank in a.entries.items():
        sig = tuple(key[i] for i in shared_pos_a)
        for rest, other in index.get(sig, ()):
            total = rank + other
            full = key + rest
            if total < entries.get(full, INF):
                entries[full] = total
    return _Factor(scope, entries)


def _min_out(factor: _Factor, var: str) -> _Factor:
    pos = factor.scope.index(var)
    scope = factor.scope[:pos] + factor.scope[pos + 1 :]
    entries: dict[tuple[str, ...], Rank] = {}
    for key, rank in factor.entries.items():
        sub = key[:pos] + key[pos + 1 :]
        if rank < entries.get(sub, INF):
            entries[sub] = rank
    return _Factor(scope, entries)


def _min_fill_order(scopes: Iterable[tuple[str, ...]], keep: set[str]) -> list[str]:
    """Order the eliminable variables by the min-fill heuristic.

    Ties break lexicographically on the node name so repeated runs
    eliminate in the same order.
    """
    neighbors: dict[str, set[str]] = {}
    for scope in scopes:
        for v in scope:
            neighbors.setdefault(v, set()).update(u for u in scope if u != v)
    pending = sorted(v for v in neighbors if v not in keep)
    order: list[str] = []
    while pending:
        best_name = None
        best_fill = None
        for v in pending:
            nb = [u for u in neighbors[v] if u != v]
            fill = sum(
                1
                for x, y in itertools.combinations(nb, 2)
                if y not in neighbors[x]
            )
            if best_fill is None or fill < best_fill or (fill == best_fill and v < best_name):
                best_name, best_fill = v, fill
        order.append(best_name)
        pending.remove(best_name)
        nb = [u for u in neighbors[best_name] if u != best_name]
        for x, y in itertools.combinations(nb, 2):
            neighbors[x].add(y)
            neighbors[y].add(x)
        for u in nb:
            neighbors[u].discard(best_name)
        del neighbors[best_name]
    return order


def _run_elimination(factors: list[_Factor], keep: set[str]) -> list[_Factor]:
    order = _min_fill_order((f.scope for f in factors), keep)
    live = list(factors)
    for var in order:
        involved = [f for f in live if var in f.scope]
        if not involved:
            continue
        live = [f for f in live if var not in f.scope]
        merged = involved[0]
        for f in involved[1:]:
            merged = _combine(merged, f)
        live.append(_min_out(merged, var))
    return live


def _joint_with_evidence(net: Network, evidence: Evidence, query: str | None) -> dict[str, Rank]:
    """Min-sum table of rank(query = v and evidence), or the evidence rank alone."""
    keep = {query} if query is not None and query not in evidence else set()
    factors = [
        _family_factor(net, child).restrict(evidence) for child in net.families
    ]
    remaining = _run_elimination(factors, keep)

    if query is None or query in evidence:
        total: Rank = 0
        for f in remaining:
            best = min(f.entries.values(), default=INF)
            if best == INF:
                return {"": INF}
            total += best
        return {"": total}

    values = net.variables[query].values
    totals: dict[str, Rank] = {v: 0 for v in values}
    for f in remaining:
        if f.scope == ():
            best = f.entries.get((), INF)
            for v in values:
                totals[v] = totals[v] + best if totals[v] != INF and best != INF else INF
        else:
            for v in values:
                entry = f.entries.get((v,), INF)
                totals[v] = totals[v] + entry if totals[v] != INF and entry != INF else INF
    return totals


def evidence_rank(net: Network, evidence: Evidence) -> Rank:
    """Unconditional rank of an evidence set (INF means inconsistent)."""
    check_evidence(net, evidence)
    return _joint_with_evidence(net, evidence, None)[""]


def eliminate(
    net: Network, evidence: Evidence, queries: Sequence[str]
) -> dict[str, Posterior]:
    """Posterior ranks for each query node given the evidence.

    Matches enumerate_rank exactly on every node and value; raises
    InconsistentEvidenceError when the evidence rank is INF.
    """
    check_evidence(net, evidence)
    for q in queries:
        if q not in net.variables:
            raise KeyError(f"query references unknown node {q}")
    ev_rank = evidence_rank(net, evidence)
    if ev_rank == INF:
        raise InconsistentEvidenceError("evidence itself has rank infinity")

    out: dict[str, Posterior] = {}
    for q in queries:
        values = net.variables[q].values
        if q in evidence:
            ranks = {v: (0 if v == evidence[q] else INF) for v in values}
        else:
            joint = _joint_with_evidence(net, evidence, q)
            ranks = {v: rank_sub(joint[v], ev_rank) for v in values}
        out[q] = Posterior(q, ranks)
    return out


# -- abduction and what-if ----------------------------------------------------


@dataclass(frozen=True)
class Explanations:
    """Ranked joint completions of a target set, best first.

    `assignments` pairs each completion with its conditional rank;
    `best` lists the rank-0 completions in lexicographic order.
    """

    posteriors: Mapping[str, Posterior]
    assignments: tuple[tuple[Mapping[str, str], Rank], ...]
    best: tuple[Mapping[str, str], ...]


def most_surprising_explanations(
    net: Network,
    evidence: Evidence,
    targets: Sequence[str],
    max_assignments: int = 4096,
) -> Explanations:
    """Posterior per target plus the jointly least-surprising completions."""
    targets = list(targets)
    posteriors = eliminate(net, evidence, targets)
    ev_rank = evidence_rank(net, evidence)

    free = [t for t in targets if t not in evidence]
    count = 1
    for t in free:
        count *= len(net.variables[t].values)
    if count > max_assignments:
        raise ValueError(f"{count} joint completions exceed the bound {max_assignments}")

    ranked: list[tuple[dict[str, str], Rank]] = []
    for combo in itertools.product(*(net.variables[t].values for t in free)):
        assignment = dict(evidence)
        chosen = {t: v for t, v in zip(free, combo)}
        assignment.update(chosen)
        full = {t: assignment[t] for t in targets}
        joint = _joint_with_evidence(net, assignment, None)[""]
        ranked.append((full, INF if joint == INF else rank_sub(joint, ev_rank)))

    ranked.sort(key=lambda item: (item[1] == INF, item[1], tuple(sorted(item[0].items()))))
    best = tuple(a for a, r in ranked if r == 0)
    return Explanations(
        posteriors=posteriors,
        assignments=tuple((a, r) for a, r in ranked),
        best=best,
    )


@dataclass(frozen=True)
class WhatIf:
    """Paired posteriors for a base evidence set and a hypothetical delta.

    A branch that turns out inconsistent carries an error message instead
    of posteriors; the other branch is still reported. `diffs` holds
    hypothetical minus base per value (positive: more surprising), with
    +/-INF marking values that switched between possible and impossible.
    """

    base: Mapping[str, Posterior] | None
    base_error: str | None
    hypothetical: Mapping[str, Posterior] | None
    hypothetical_error: str | None
    diffs: Mapping[str, Mapping[str, float]] | None


def whatif(
    net: Network,
    base: Evidence,
    delta: Evidence,
    queries: Sequence[str],
) -> WhatIf:
    """Compare posteriors with and without the delta; delta overrides base."""
    merged = dict(base)
    merged.update(delta)

    base_post: dict[str, Posterior] | None = None
    base_err = hypo_err = None
    hypo_post: dict[str, Posterior] | None = None
    try:
        base_post = eliminate(net, base, queries)
    except InconsistentEvidenceError as exc:
        base_err = str(exc)
    try:
        hypo_post = eliminate(net, merged, queries)
    except InconsistentEvidenceError as exc:
        hypo_err = str(exc)

    diffs: dict[str, dict[str, float]] | None = None
    if base_post is not None and hypo_post is not None:
        diffs = {}
        for q in queries:
            per_value: dict[str, float] = {}
            for v in net.variables[q].values:
                before = base_post[q].ranks[v]
                after = hypo_post[q].ranks[v]
                if before == after:
                    per_value[v] = 0
                elif after == INF:
                    per_value[v] = INF
                elif before == INF:
                    per_value[v] = -INF
                else:
                    per_value[v] = after - before
            diffs[q] = per_value
    return WhatIf(base_post, base_err, hypo_post, hypo_err, diffs)
