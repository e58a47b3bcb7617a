"""Min-plus algebra of surprise ranks, and exhaustive ranking tables over worlds.

A rank is a degree of surprise: 0 marks a serious possibility, larger
integers mark increasingly surprising contingencies, and infinity marks
impossibility. Ranks form a commutative semiring under (min, +), with
min-identity infinity and +-identity 0. Conjunction of independent
surprises adds; disjunction over alternatives takes the minimum.

A world is a total value assignment to a declared set of variables, and a
ranking table assigns a rank to every world, with at least one world at
rank 0 (something must be unsurprising). Tables here are exhaustive by
construction and deliberately small: they are the semantic ground truth
that the factored network representation and the elimination engine are
tested against, not a production data structure.

Interpretation note: a rank can be read as the order of magnitude of a
vanishing probability (the exponent of an infinitesimal), which is why
conjunction adds ranks and conditioning subtracts them. Nothing here
computes numeric probabilities; the calculus stays integer-exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, NamedTuple

INF: float = math.inf

# A rank is a non-negative int, or INF. The float type only ever carries INF.
Rank = int | float

World = Mapping[str, str]
Predicate = Callable[[World], bool]

# Exhaustive tables are a test oracle; cap their size so a typo in a test
# cannot enumerate forever.
MAX_ORACLE_WORLDS = 1 << 20


class InconsistentEvidenceError(ValueError):
    """Raised when conditioning on, or asserting, rank-infinity evidence."""


def is_rank(x: object) -> bool:
    """True for non-negative integers and INF (bools excluded)."""
    if isinstance(x, bool):
        return False
    if isinstance(x, int):
        return x >= 0
    return x == INF


def rank_add(a: Rank, b: Rank) -> Rank:
    """Saturating addition: INF absorbs."""
    if a == INF or b == INF:
        return INF
    return a + b


def rank_sub(a: Rank, b: Rank) -> Rank:
    """Rank difference a - b, used for conditioning.

    Requires b <= a and b finite; violating either signals incoherent
    conditioning rather than a representable rank. INF - b stays INF.
    """
    if b == INF:
        raise ValueError("cannot subtract an infinite rank")
    if a == INF:
        return INF
    if b > a:
        raise ValueError(f"rank subtraction would be negative: {a} - {b}")
    return a - b


def tautology(_: World) -> bool:
    return True


def contradiction(_: World) -> bool:
    return False


def negate(phi: Predicate) -> Predicate:
    return lambda world: not phi(world)


def equals(var: str, value: str) -> Predicate:
    """Predicate holding on worlds where `var` is assigned `value`."""
    return lambda world: world[var] == value


def conj(*phis: Predicate) -> Predicate:
    return lambda world: all(phi(world) for phi in phis)


class Belief(NamedTuple):
    held: bool
    degree: Rank


@dataclass(frozen=True)
class RankingTable:
    """Exhaustive ranking over all worlds of a variable set.

    `vars` fixes the variable order; `domains` the per-variable values;
    `ranks` maps each value tuple (aligned with `vars`) to its rank.
    """

    vars: tuple[str, ...]
    domains: tuple[tuple[str, ...], ...]
    ranks: Mapping[tuple[str, ...], Rank]

    def __post_init__(self) -> None:
        if len(self.vars) != len(self.domains):
            raise ValueError("vars and domains disagree in length")
        n_worlds = math.prod(len(d) for d in self.domains)
        if n_worlds > MAX_ORACLE_WORLDS:
            raise ValueError(f"table would hold {n_worlds} worlds, above the oracle bound")
        if len(self.ranks) != n_worlds:
            raise ValueError("ranking table must cover every world exactly once")
        best = min(self.ranks.values(), default=INF)
        if best != 0:
            raise ValueError("ranking table is not normalized: no world has rank 0")

    def worlds(self) -> Iterator[tuple[World, Rank]]:
        for key in itertools.product(*self.domains):
            yield dict(zip(self.vars, key)), self.ranks[key]

    def world_rank(self, world: World) -> Rank:
        key = tuple(world[v] for v in self.vars)
        return self.ranks[key]

    def marginal(self, phi: Predicate) -> Rank:
        """Rank of a proposition: min rank over the worlds satisfying it."""
        best: Rank = INF
        for world, rank in self.worlds():
            if rank < best and phi(world):
                best = rank
        return best

    def condition(self, evidence: Predicate) -> "RankingTable":
        """Shift ranks so the evidence worlds renormalize; others become INF."""
        shift = self.marginal(evidence)
        if shift == INF:
            raise InconsistentEvidenceError("conditioning on rank-infinity evidence")
        conditioned = {}
        for key in itertools.product(*self.domains):
            world = dict(zip(self.vars, key))
            if evidence(world):
                conditioned[key] = rank_sub(self.ranks[key], shift)
            else:
                conditioned[key] = INF
        return RankingTable(self.vars, self.domains, conditioned)

    def believed(self, phi: Predicate) -> Belief:
        """A proposition is believed iff its negation is surprising."""
        against = self.marginal(negate(phi))
        if against > 0:
            return Belief(True, against)
        return Belief(False, 0)

    def marginalize_onto(self, keep: tuple[str, ...]) -> "RankingTable":
        """Project the table onto a subset of its variables (min over the rest)."""
        positions = [self.vars.index(v) for v in keep]
        domains = tuple(self.domains[i] for i in positions)
        ranks: dict[tuple[str, ...], Rank] = {
            key: INF for key in itertools.product(*domains)
        }
        for key, rank in self.ranks.items():
            sub = tuple(key[i] for i in positions)
            if rank < ranks[sub]:
                ranks[sub] = rank
        return RankingTable(keep, domains, ranks)
