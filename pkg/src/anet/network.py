"""Static action-network representation.

A network is a DAG of variables, each carrying exactly one conditional
rank matrix (its family): for every instantiation of the parents, a
row of ranks over the child's values with row minimum 0. The joint rank
of a world is the sum of the matching row entries across families, so the
factored form reconstructs a normalized ranking over all worlds.

Variables are tagged as events (no temporal inertia) or persistences
(state and governing mechanism carry over between time slices), and may
be flagged controllable, in which case action nodes can set them directly
subject to preconditions. Those tags drive the temporal unfolding; they do
not affect static semantics.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Literal, Mapping

from .ranks import INF, MAX_ORACLE_WORLDS, Rank, RankingTable, World, is_rank, rank_add

Kind = Literal["event", "persistence"]

IDLE = "idle"


class InvalidNetworkError(ValueError):
    """Raised by require_valid when a network breaks a structural invariant."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass(frozen=True)
class Variable:
    name: str
    values: tuple[str, ...] = ("false", "true")
    kind: Kind = "event"
    controllable: bool = False
    preconditions: tuple[tuple[str, str], ...] = ()
    flip_surprise: Rank = 1
    action_surprise: Rank = 1


@dataclass(frozen=True)
class Family:
    """Conditional rank matrix for one child given its parents.

    Rows are keyed by parent value tuples aligned with `parents`; a root
    family has the single key (). Treat instances as immutable.
    """

    child: str
    parents: tuple[str, ...]
    rows: Mapping[tuple[str, ...], Mapping[str, Rank]]

    def row(self, parent_values: tuple[str, ...]) -> Mapping[str, Rank]:
        return self.rows[parent_values]

    def finite_entries(self) -> set[int]:
        return {
            r
            for row in self.rows.values()
            for r in row.values()
            if r != INF
        }


def prior_family(child: str, ranks: Mapping[str, Rank]) -> Family:
    return Family(child=child, parents=(), rows={(): dict(ranks)})


def ignorance_prior(child: str, values: tuple[str, ...]) -> Family:
    return prior_family(child, {v: 0 for v in values})


@dataclass(frozen=True)
class Network:
    variables: Mapping[str, Variable]
    families: Mapping[str, Family]
    comment: str | None = None

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def build(
        variables: list[Variable], families: list[Family], comment: str | None = None
    ) -> "Network":
        return Network(
            variables={v.name: v for v in variables},
            families={f.child: f for f in families},
            comment=comment,
        )

    def with_variable(self, var: Variable, family: Family) -> "Network":
        variables = dict(self.variables)
        families = dict(self.families)
        variables[var.name] = var
        families[var.name] = family
        return Network(variables, families, self.comment)

    def replace_family(self, family: Family) -> "Network":
        if family.child not in self.variables:
            raise KeyError(family.child)
        families = dict(self.families)
        families[family.child] = family
        return Network(self.variables, families, self.comment)

    # -- validation ----------------------------------------------------------

    def validate(self) -> list[str]:
        """Collect invariant violations; an empty list means the network is valid.

        Violations are data, not exceptions: each entry names the offending
        variable or row so a caller can surface located diagnostics.
        """
        out: list[str] = []
        for name, var in self.variables.items():
            if var.name != name:
                out.append(f"variable {name}: registered under a different key")
            # Singleton domains are legal: a trivial suppressor node has the
            # single value of strength 0.
            if len(var.values) < 1:
                out.append(f"variable {name}: needs at least one value")
            if len(set(var.values)) != len(var.values):
                out.append(f"variable {name}: duplicate value labels")
            if var.kind == "persistence" and len(var.values) != 2:
                out.append(f"variable {name}: persistence variables must be binary")
            if var.kind == "persistence" and not _finite_rank(var.flip_surprise):
                out.append(f"variable {name}: flip_surprise must be a finite rank")
            if var.controllable:
                if not _finite_rank(var.action_surprise):
                    out.append(f"variable {name}: action_surprise must be a finite rank")
                if IDLE in var.values:
                    out.append(
                        f"variable {name}: controllable variables may not use the "
                        f"reserved value {IDLE!r}"
                    )
                for pvar, pval in var.preconditions:
                    if pvar == name:
                        out.append(f"variable {name}: precondition references itself")
                    elif pvar not in self.variables:
                        out.append(
                            f"variable {name}: precondition references "
                            f"undeclared variable {pvar}"
                        )
                    elif pval not in self.variables[pvar].values:
                        out.append(
                            f"variable {name}: precondition value {pval!r} is not "
                            f"a value of {pvar}"
                        )
        for name in self.variables:
            if name not in self.families:
                out.append(f"variable {name}: missing family")
        for child, fam in self.families.items():
            out.extend(self._validate_family(child, fam))
        out.extend(self._check_acyclic())
        return out

    def _validate_family(self, child: str, fam: Family) -> list[str]:
        out: list[str] = []
        if fam.child != child:
            out.append(f"family {child}: registered under a different key")
            return out
        if child not in self.variables:
            out.append(f"family {child}: child is not a declared variable")
            return out
        var = self.variables[child]
        for p in fam.parents:
            if p not in self.variables:
                out.append(f"family {child}: dangling parent reference {p}")
                return out
        if len(set(fam.parents)) != len(fam.parents):
            out.append(f"family {child}: duplicate parent {fam.parents}")
            return out
        expected = list(itertools.product(*(self.variables[p].values for p in fam.parents)))
        seen = set(fam.rows.keys())
        for inst in expected:
            if inst not in seen:
                out.append(f"family {child}: missing row for parent instantiation {inst}")
        for inst in seen:
            if inst not in set(expected):
                out.append(f"family {child}: row {inst} matches no parent instantiation")
        for inst, row in fam.rows.items():
            if set(row.keys()) != set(var.values):
                out.append(f"family {child}: row {inst} does not cover the child values")
                continue
            if any(not is_rank(r) for r in row.values()):
                out.append(f"family {child}: row {inst} holds a non-rank entry")
                continue
            if min(row.values()) != 0:
                out.append(f"family {child}: row {inst} is not normalized (min != 0)")
        return out

    def _check_acyclic(self) -> list[str]:
        try:
            self.topological_order()
        except ValueError as exc:
            return [str(exc)]
        return []

    def require_valid(self) -> "Network":
        violations = self.validate()
        if violations:
            raise InvalidNetworkError(violations)
        return self

    # -- semantics -----------------------------------------------------------

    def topological_order(self) -> list[str]:
        """Parents-before-children order; deterministic for a given network.

        Dangling references are skipped here; validate reports them
        separately, and valid networks have none.
        """
        order: list[str] = []
        state: dict[str, int] = {}

        def visit(name: str) -> None:
            mark = state.get(name)
            if mark == 2:
                return
            if mark == 1:
                raise ValueError(f"parent relation has a cycle through {name}")
            state[name] = 1
            for p in self.families[name].parents:
                if p in self.families:
                    visit(p)
            state[name] = 2
            order.append(name)

        for name in self.variables:
            if name in self.families:
                visit(name)
        return order

    def joint_rank(self, world: World) -> Rank:
        """Sum of family entries selected by a total world; saturates at INF."""
        total: Rank = 0
        for child, fam in self.families.items():
            inst = tuple(world[p] for p in fam.parents)
            total = rank_add(total, fam.rows[inst][world[child]])
            if total == INF:
                return INF
        return total

    def ranking_of(self, max_worlds: int = MAX_ORACLE_WORLDS) -> RankingTable:
        """Exhaustive ranking table of the network (oracle-sized networks only)."""
        names = tuple(sorted(self.variables))
        domains = tuple(self.variables[n].values for n in names)
        n_worlds = 1
        for d in domains:
            n_worlds *= len(d)
        if n_worlds > max_worlds:
            raise ValueError(f"{n_worlds} worlds exceed the oracle bound {max_worlds}")
        ranks = {
            key: self.joint_rank(dict(zip(names, key)))
            for key in itertools.product(*domains)
        }
        return RankingTable(names, domains, ranks)

    def domain_of(self, name: str) -> tuple[str, ...]:
        return self.variables[name].values

    def worlds(self) -> Iterator[World]:
        names = tuple(sorted(self.variables))
        for key in itertools.product(*(self.variables[n].values for n in names)):
            yield dict(zip(names, key))


def _finite_rank(x: object) -> bool:
    return is_rank(x) and x != INF
