"""Direct-intervention machinery for controllable variables.

A controllable variable gains a fresh root parent, its action node, whose
values are the variable's values plus "idle". The augmented matrix keeps
the natural rows when the action is idle, forces the chosen value (0 for
it, INF for the rest) when the action fires with its preconditions
satisfied, and falls back to the natural rows when any precondition
deviates: an ineffective action leaves the variable to its natural
causes. Precondition variables join the parent set so the gate is read
off the same instantiation.

Action priors rank idle at 0 and every concrete setting at the variable's
action surprise (default 1), so unasserted actions stay plausible enough
to serve as explanations while never competing with doing nothing.
"""

from __future__ import annotations

import itertools

from .network import IDLE, Family, Network, Variable, prior_family
from .ranks import INF, Rank


def action_node_name(var: str) -> str:
    return f"do_{var}"


def action_values(values: tuple[str, ...]) -> tuple[str, ...]:
    return values + (IDLE,)


def action_prior(do_name: str, values: tuple[str, ...], surprise: Rank) -> Family:
    ranks: dict[str, Rank] = {v: surprise for v in values}
    ranks[IDLE] = 0
    return prior_family(do_name, ranks)


def augment_with_action(
    net: Network,
    var: str,
    do_name: str | None = None,
    preconditions: tuple[tuple[str, str], ...] | None = None,
) -> Network:
    """Attach an action node to one controllable variable.

    `preconditions` defaults to the variable's declared ones; the temporal
    unfolder overrides it with slice-mapped node names. Preconditions that
    are already natural parents are gated in place rather than duplicated.
    """
    target = net.variables[var]
    if not target.controllable:
        raise ValueError(f"variable {var} is not flagged controllable")
    if do_name is None:
        do_name = action_node_name(var)
    if preconditions is None:
        preconditions = target.preconditions

    family = net.families[var]
    extra = tuple(p for p, _ in preconditions if p not in family.parents)
    # Dedupe while preserving first occurrence; a variable may gate twice.
    extra = tuple(dict.fromkeys(extra))
    new_parents = family.parents + (do_name,) + extra

    rows: dict[tuple[str, ...], dict[str, Rank]] = {}
    do_domain = action_values(target.values)
    extra_domains = [net.variables[p].values for p in extra]
    for inst, natural in family.rows.items():
        for do_value in do_domain:
            for extra_values in itertools.product(*extra_domains):
                key = inst + (do_value,) + extra_values
                assignment = dict(zip(family.parents, inst))
                assignment.update(zip(extra, extra_values))
                satisfied = all(
                    assignment[p] == required for p, required in preconditions
                )
                if do_value == IDLE or not satisfied:
                    rows[key] = dict(natural)
                else:
                    rows[key] = {
                        v: (0 if v == do_value else INF) for v in target.values
                    }

    do_var = Variable(name=do_name, values=do_domain)
    out = net.with_variable(do_var, action_prior(do_name, target.values, target.action_surprise))
    return out.replace_family(Family(child=var, parents=new_parents, rows=rows))
