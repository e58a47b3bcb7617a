"""Unfold a static action network over a finite horizon.

The unfolded object is a plain network over time-indexed nodes. Within
each slice the causal structure of the base network repeats: events get a
fresh copy of their family, persistences get their deterministic
suppressor form with same-slice S and I parents, controllables get a
per-slice action node. Only two kinds of edges cross slices:

  S(e)@t -> S(e)@t+1   suppressor persistence; switching from strength j
                       to strength i is surprising to degree |j - i|, so
                       holding steady is free and the bias against change
                       grows with the size of the jump.
  e@t    -> I(e)@t+1   inertia; the carrier copies the previous state at
                       rank 0 and contradicts it at the variable's flip
                       surprise p, the cost of a non-causal change.

At slice 0 the suppressor keeps its static prior (rank s for strength s)
and the inertia carrier starts in ignorance; initial states are asserted
as ordinary evidence rather than baked into priors.

Node names are `var@t`, `S(var)@t`, `I(var)@t` and `do_var@t`; printing
and parsing are exact inverses for base names made of word characters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Literal, Mapping

from .actions import augment_with_action
from .expansion import expand_family, suppressor_label
from .network import Family, Network, Variable, ignorance_prior
from .ranks import Rank

Role = Literal["state", "suppressor", "inertia", "action"]

_BASE_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_NODE = re.compile(
    r"""
    (?:
        (?P<role>S|I)\((?P<wrapped>[A-Za-z][A-Za-z0-9_]*)\)
      | do_(?P<action>[A-Za-z][A-Za-z0-9_]*)
      | (?!do_)(?P<state>[A-Za-z][A-Za-z0-9_]*)
    )
    @(?P<t>0|[1-9][0-9]*)\Z
    """,
    re.VERBOSE,
)


def node_id(var: str, role: Role, t: int) -> str:
    if role == "state":
        return f"{var}@{t}"
    if role == "suppressor":
        return f"S({var})@{t}"
    if role == "inertia":
        return f"I({var})@{t}"
    if role == "action":
        return f"do_{var}@{t}"
    raise ValueError(f"unknown node role {role!r}")


def parse_node_id(node: str) -> tuple[str, Role, int]:
    m = _NODE.match(node)
    if not m:
        raise ValueError(f"malformed node id {node!r}")
    t = int(m.group("t"))
    if m.group("wrapped"):
        role: Role = "suppressor" if m.group("role") == "S" else "inertia"
        return m.group("wrapped"), role, t
    if m.group("action"):
        return m.group("action"), "action", t
    return m.group("state"), "state", t


def check_unfoldable_name(name: str) -> None:
    if not _BASE_NAME.match(name) or name.startswith("do_"):
        raise ValueError(
            f"variable name {name!r} cannot be time-indexed unambiguously; "
            "use word characters and avoid the do_ prefix"
        )


@dataclass(frozen=True)
class TemporalNetwork:
    """A base network compiled over slices 0..horizon."""

    base: Network
    horizon: int
    network: Network
    slice_index: Mapping[str, int]

    def state_node(self, var: str, t: int) -> str:
        return node_id(var, "state", t)

    def action_node(self, var: str, t: int) -> str:
        return node_id(var, "action", t)

    def nodes_at(self, t: int) -> list[str]:
        return [n for n, s in self.slice_index.items() if s == t]


def unfold(base: Network, horizon: int, actions_from_slice: int = 0) -> TemporalNetwork:
    """Compile `base` into a plain network over slices 0..horizon.

    `actions_from_slice` places the first action nodes; 0 allows acting in
    the initial slice, 1 reserves slice 0 for pure observation.
    """
    if not isinstance(horizon, int) or horizon < 1:
        raise ValueError(f"horizon must be an integer >= 1, got {horizon!r}")
    if actions_from_slice not in (0, 1):
        raise ValueError("actions_from_slice must be 0 or 1")
    base.require_valid()
    for name in base.variables:
        check_unfoldable_name(name)
    _check_precondition_orientation(base)

    variables: dict[str, Variable] = {}
    families: dict[str, Family] = {}
    slice_index: dict[str, int] = {}

    def add(var: Variable, fam: Family, t: int) -> None:
        variables[var.name] = var
        families[var.name] = fam
        slice_index[var.name] = t

    for t in range(horizon + 1):
        for name, var in base.variables.items():
            fam = base.families[name]
            sliced_parents = tuple(node_id(p, "state", t) for p in fam.parents)
            state_name = node_id(name, "state", t)

            if var.kind == "persistence":
                s_node = node_id(name, "suppressor", t)
                i_node = node_id(name, "inertia", t)
                expanded = expand_family(fam, var.values, s_name=s_node, i_name=i_node)
                s_values = tuple(suppressor_label(s) for s in expanded.strengths)

                if t == 0:
                    s_fam = expanded.s_prior
                else:
                    s_fam = _suppressor_step(s_node, node_id(name, "suppressor", t - 1), expanded.strengths)
                add(Variable(name=s_node, values=s_values), s_fam, t)

                if t == 0:
                    i_fam = ignorance_prior(i_node, var.values)
                else:
                    i_fam = _inertia_step(
                        i_node, node_id(name, "state", t - 1), var.values, var.flip_surprise
                    )
                add(Variable(name=i_node, values=var.values), i_fam, t)

                state_fam = Family(
                    child=state_name,
                    parents=sliced_parents + (s_node, i_node),
                    rows=expanded.child.rows,
                )
            else:
                state_fam = Family(child=state_name, parents=sliced_parents, rows=fam.rows)

            add(
                Variable(
                    name=state_name,
                    values=var.values,
                    kind=var.kind,
                    controllable=var.controllable,
                    preconditions=tuple(
                        (node_id(p, "state", t), v) for p, v in var.preconditions
                    ),
                    flip_surprise=var.flip_surprise,
                    action_surprise=var.action_surprise,
                ),
                state_fam,
                t,
            )

        # Second pass per slice: preconditions may reference any same-slice
        # node, so augmentation waits until the whole slice exists.
        for name, var in base.variables.items():
            if var.controllable and t >= actions_from_slice:
                state_name = node_id(name, "state", t)
                do_name = node_id(name, "action", t)
                augmented = augment_with_action(
                    Network(variables, families), state_name, do_name=do_name
                )
                variables[do_name] = augmented.variables[do_name]
                families[do_name] = augmented.families[do_name]
                families[state_name] = augmented.families[state_name]
                slice_index[do_name] = t

    result = Network(dict(variables), dict(families))
    return TemporalNetwork(base=base, horizon=horizon, network=result, slice_index=slice_index)


def _check_precondition_orientation(base: Network) -> None:
    """Preconditions become parents of the gated variable; a precondition
    that is causally downstream of it would turn the slice into a cycle."""
    descendants: dict[str, set[str]] = {name: set() for name in base.variables}
    for name in reversed(base.topological_order()):
        for p in base.families[name].parents:
            descendants[p].add(name)
            descendants[p].update(descendants[name])
    for name, var in base.variables.items():
        if not var.controllable:
            continue
        for gate, _ in var.preconditions:
            if gate in descendants.get(name, ()):
                raise ValueError(
                    f"precondition {gate} of {name} is one of its causal "
                    "descendants; gating on it would create a cycle"
                )


def _suppressor_step(child: str, parent: str, strengths: tuple[int, ...]) -> Family:
    """Inter-slice suppressor family: changing strength j -> i costs |j - i|."""
    rows: dict[tuple[str, ...], dict[str, Rank]] = {}
    for j in strengths:
        rows[(suppressor_label(j),)] = {
            suppressor_label(i): abs(j - i) for i in strengths
        }
    return Family(child=child, parents=(parent,), rows=rows)


def _inertia_step(
    child: str, previous_state: str, values: tuple[str, ...], flip_surprise: Rank
) -> Family:
    """Inter-slice inertia family: copying is free, flipping costs p."""
    rows: dict[tuple[str, ...], dict[str, Rank]] = {}
    for prev in values:
        rows[(prev,)] = {v: (0 if v == prev else flip_surprise) for v in values}
    return Family(child=child, parents=(previous_state,), rows=rows)
