"""Functional expansion of a family under the suppressor model.

A non-deterministic rank matrix over a binary child can be read as a
parsimonious encoding of a deterministic mechanism plus exceptions: the
row entry for the dispreferred value is the combined strength of the
suppressors that would have to be active to defeat the causal influence.
Expansion makes that reading explicit. Each expanded child gains two new
parents:

  S(e)  the suppressor, with one value per finite strength appearing in
        the child's matrix, written "ω^s"; its prior ranks strength s at
        s, so suppressors are typically inactive and stronger ones are
        more surprising.
  I(e)  the inertia carrier, ranging over the child's own values; when a
        suppressor defeats every causal influence, the child simply copies
        I(e). Statically its prior is all-zero ignorance; temporally it is
        wired to the child's previous state.

The child itself becomes deterministic: a suppressor of strength s kills
every influence of rank <= s, so the child takes the causally forced value
when one of its two values is still more surprising than s, and copies
I(e) otherwise. Encoded as a matrix, each row has a single 0 entry and INF
elsewhere. Marginalizing the expanded family over S(e) and I(e) returns
the original matrix exactly; `verify_exact_expansion` checks that identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .network import Family, Network, Variable, ignorance_prior, prior_family
from .ranks import INF, Rank, rank_add


def suppressor_strengths(family: Family) -> tuple[int, ...]:
    """Sorted distinct finite ranks of the matrix; always includes 0."""
    return tuple(sorted(family.finite_entries() | {0}))


def suppressor_label(strength: int) -> str:
    return f"ω^{strength}"


def suppressor_values(family: Family) -> tuple[str, ...]:
    """Suppressor value labels for a family, weakest first."""
    return tuple(suppressor_label(s) for s in suppressor_strengths(family))


def forced_value(
    row: dict[str, Rank] | dict[str, int], values: tuple[str, str], strength: int, inertia: str
) -> str:
    """Deterministic outcome for one parent row under an active suppressor.

    With both row entries at or below the suppressor strength nothing is
    forced and the inertia value wins. Row normalization (min = 0) makes
    the two forced branches mutually exclusive.
    """
    lo, hi = values
    surprise_lo = row[lo]
    surprise_hi = row[hi]
    if surprise_lo > strength and surprise_hi > strength:
        raise AssertionError("both child values forced: row cannot be normalized")
    if surprise_lo > strength:
        return hi
    if surprise_hi > strength:
        return lo
    return inertia


@dataclass(frozen=True)
class ExpandedFamily:
    """Deterministic child family plus the priors of its new S and I parents."""

    child: Family
    s_prior: Family
    i_prior: Family
    s_name: str
    i_name: str
    strengths: tuple[int, ...]
    child_values: tuple[str, str]


def expand_family(
    family: Family,
    child_values: tuple[str, ...],
    s_name: str | None = None,
    i_name: str | None = None,
) -> ExpandedFamily:
    """Rewrite a binary-child family into its deterministic suppressor form."""
    if len(child_values) != 2:
        raise ValueError(
            f"family {family.child}: only binary children can be expanded "
            f"(got values {child_values})"
        )
    values: tuple[str, str] = (child_values[0], child_values[1])
    s_name = s_name or f"S({family.child})"
    i_name = i_name or f"I({family.child})"
    strengths = suppressor_strengths(family)

    rows: dict[tuple[str, ...], dict[str, Rank]] = {}
    for inst, row in family.rows.items():
        for s in strengths:
            for inertia in values:
                outcome = forced_value(dict(row), values, s, inertia)
                key = inst + (suppressor_label(s), inertia)
                rows[key] = {v: (0 if v == outcome else INF) for v in values}

    child = Family(
        child=family.child,
        parents=family.parents + (s_name, i_name),
        rows=rows,
    )
    s_prior = prior_family(s_name, {suppressor_label(s): s for s in strengths})
    i_prior = ignorance_prior(i_name, values)
    return ExpandedFamily(child, s_prior, i_prior, s_name, i_name, strengths, values)


def expanded_marginal(
    expanded: ExpandedFamily, inst: tuple[str, ...], value: str
) -> Rank:
    """Min-sum marginal of the expanded family over its S and I parents."""
    best: Rank = INF
    s_row = expanded.s_prior.rows[()]
    i_row = expanded.i_prior.rows[()]
    for s in expanded.strengths:
        for inertia in expanded.child_values:
            key = inst + (suppressor_label(s), inertia)
            cost = rank_add(
                expanded.child.rows[key][value],
                rank_add(s_row[suppressor_label(s)], i_row[inertia]),
            )
            if cost < best:
                best = cost
    return best


def expansion_preserves_family(expanded: ExpandedFamily, family: Family) -> bool:
    """Exact check that marginalizing out S and I recovers the original matrix."""
    for inst, row in family.rows.items():
        for value, rank in row.items():
            if expanded_marginal(expanded, inst, value) != rank:
                return False
    return True


def verify_exact_expansion(family: Family, child_values: tuple[str, ...]) -> bool:
    """True iff the expansion of `family` loses no information."""
    return expansion_preserves_family(expand_family(family, child_values), family)


def expand_network(net: Network, targets: set[str] | None = None) -> Network:
    """Replace each target family by its suppressor expansion.

    Targets default to every persistence variable; events keep their
    non-deterministic families. The S and I parents enter as plain event
    variables with the priors from the expansion.
    """
    if targets is None:
        targets = {n for n, v in net.variables.items() if v.kind == "persistence"}
    out = net
    for name in sorted(targets):
        if name not in net.variables:
            raise KeyError(f"expansion target {name} is not declared")
        var = net.variables[name]
        expanded = expand_family(out.families[name], var.values)
        s_values = tuple(suppressor_label(s) for s in expanded.strengths)
        out = out.with_variable(
            Variable(name=expanded.s_name, values=s_values),
            expanded.s_prior,
        )
        out = out.with_variable(
            Variable(name=expanded.i_name, values=var.values),
            expanded.i_prior,
        )
        out = out.replace_family(expanded.child)
    return out
