"""Text formats for networks (.annet) and scenarios (.anscn).

Both formats are JSON documents with a fixed canonical rendering: UTF-8,
two-space indentation, keys sorted, list entries sorted where order is
not semantic (variables by name, families by child, rows by parent
instantiation, assertions by time then variable), and a trailing newline.
Serializing a parsed canonical file reproduces it byte for byte, which is
what makes golden-file comparisons meaningful.

Ranks are JSON integers with the literal string "inf" for impossibility.
Parse failures raise ParseError carrying located diagnostics (line/column
for malformed JSON, a field path such as families[engine].rows[2] for
semantic problems); a document never parses into a partial network.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any

from .network import IDLE, Family, Network, Variable
from .ranks import INF, Rank
from .temporal import Role, node_id

FORMAT_VERSION = 1

ROLES = ("state", "suppressor", "inertia", "action")


@dataclass(frozen=True)
class Diagnostic:
    location: str
    message: str

    def __str__(self) -> str:
        return f"{self.location}: {self.message}"


class ParseError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        super().__init__("; ".join(str(d) for d in diagnostics))
        self.diagnostics = diagnostics


# -- rank encoding -------------------------------------------------------------


def encode_rank(rank: Rank) -> int | str:
    return "inf" if rank == INF else int(rank)


def _decode_rank(value: Any, path: str, diags: list[Diagnostic]) -> Rank:
    if value == "inf":
        return INF
    if isinstance(value, int) and not isinstance(value, bool) and value >= 0:
        return value
    diags.append(Diagnostic(path, f"expected a rank (non-negative integer or \"inf\"), got {value!r}"))
    return 0


# -- canonical JSON ------------------------------------------------------------


def _dumps(document: dict) -> str:
    return json.dumps(document, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            [Diagnostic(f"line {exc.lineno}, column {exc.colno}", exc.msg)]
        ) from exc


class _Walker:
    """Shape-checking helpers that accumulate located diagnostics."""

    def __init__(self) -> None:
        self.diags: list[Diagnostic] = []

    def fail(self, path: str, message: str) -> None:
        self.diags.append(Diagnostic(path, message))

    def obj(self, value: Any, path: str) -> dict:
        if isinstance(value, dict):
            return value
        self.fail(path, f"expected an object, got {type(value).__name__}")
        return {}

    def arr(self, value: Any, path: str) -> list:
        if isinstance(value, list):
            return value
        self.fail(path, f"expected an array, got {type(value).__name__}")
        return []

    def str_(self, value: Any, path: str) -> str:
        if isinstance(value, str):
            return value
        self.fail(path, f"expected a string, got {type(value).__name__}")
        return ""

    def int_(self, value: Any, path: str) -> int:
        if isinstance(value, int) and not isinstance(value, bool):
            return value
        self.fail(path, f"expected an integer, got {type(value).__name__}")
        return 0

    def bool_(self, value: Any, path: str) -> bool:
        if isinstance(value, bool):
            return value
        self.fail(path, f"expected a boolean, got {type(value).__name__}")
        return False

    def raise_if_failed(self) -> None:
        if self.diags:
            raise ParseError(self.diags)


# -- network documents ---------------------------------------------------------


def network_to_document(net: Network, comment: str | None = None) -> dict:
    if comment is None:
        comment = net.comment
    variables = []
    for name in sorted(net.variables):
        var = net.variables[name]
        entry: dict[str, Any] = {
            "name": var.name,
            "values": list(var.values),
            "kind": var.kind,
            "controllable": var.controllable,
        }
        if var.kind == "persistence":
            entry["flip_surprise"] = encode_rank(var.flip_surprise)
        if var.controllable:
            entry["action_surprise"] = encode_rank(var.action_surprise)
            entry["preconditions"] = [
                [p, v] for p, v in sorted(var.preconditions)
            ]
        variables.append(entry)

    families = []
    for child in sorted(net.families):
        fam = net.families[child]
        rows = []
        for inst in sorted(fam.rows):
            rows.append(
                {
                    "given": list(inst),
                    "ranks": {v: encode_rank(r) for v, r in fam.rows[inst].items()},
                }
            )
        families.append({"child": child, "parents": list(fam.parents), "rows": rows})

    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "variables": variables,
        "families": families,
    }
    if comment is not None:
        doc["comment"] = comment
    return doc


def serialize_network(net: Network, comment: str | None = None) -> str:
    return _dumps(network_to_document(net, comment))


def parse_network(text: str) -> Network:
    return network_from_document(_loads(text))


def network_from_document(raw: Any) -> Network:
    w = _Walker()
    doc = w.obj(raw, "document")
    w.raise_if_failed()

    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        w.fail("format_version", f"unsupported format_version {version!r}")
    comment = doc.get("comment")
    if comment is not None and not isinstance(comment, str):
        w.fail("comment", f"expected a string, got {type(comment).__name__}")
        comment = None

    variables: list[Variable] = []
    for i, entry in enumerate(w.arr(doc.get("variables"), "variables")):
        path = f"variables[{i}]"
        obj = w.obj(entry, path)
        name = w.str_(obj.get("name"), f"{path}.name")
        values = tuple(
            w.str_(v, f"{path}.values[{j}]")
            for j, v in enumerate(w.arr(obj.get("values", ["false", "true"]), f"{path}.values"))
        )
        kind = obj.get("kind", "event")
        if kind not in ("event", "persistence"):
            w.fail(f"{path}.kind", f"expected \"event\" or \"persistence\", got {kind!r}")
            kind = "event"
        controllable = w.bool_(obj.get("controllable", False), f"{path}.controllable")
        preconditions = []
        for j, pc in enumerate(w.arr(obj.get("preconditions", []), f"{path}.preconditions")):
            pair = w.arr(pc, f"{path}.preconditions[{j}]")
            if len(pair) != 2:
                w.fail(f"{path}.preconditions[{j}]", "expected a [variable, value] pair")
                continue
            preconditions.append(
                (
                    w.str_(pair[0], f"{path}.preconditions[{j}][0]"),
                    w.str_(pair[1], f"{path}.preconditions[{j}][1]"),
                )
            )
        flip = obj.get("flip_surprise", 1)
        action = obj.get("action_surprise", 1)
        variables.append(
            Variable(
                name=name,
                values=values,
                kind=kind,
                controllable=controllable,
                preconditions=tuple(preconditions),
                flip_surprise=_decode_rank(flip, f"{path}.flip_surprise", w.diags),
                action_surprise=_decode_rank(action, f"{path}.action_surprise", w.diags),
            )
        )

    families: list[Family] = []
    for i, entry in enumerate(w.arr(doc.get("families"), "families")):
        path = f"families[{i}]"
        obj = w.obj(entry, path)
        child = w.str_(obj.get("child"), f"{path}.child")
        parents = tuple(
            w.str_(p, f"{path}.parents[{j}]")
            for j, p in enumerate(w.arr(obj.get("parents", []), f"{path}.parents"))
        )
        rows: dict[tuple[str, ...], dict[str, Rank]] = {}
        for j, row in enumerate(w.arr(obj.get("rows"), f"{path}.rows")):
            row_path = f"{path}.rows[{j}]"
            row_obj = w.obj(row, row_path)
            given = tuple(
                w.str_(g, f"{row_path}.given[{k}]")
                for k, g in enumerate(w.arr(row_obj.get("given", []), f"{row_path}.given"))
            )
            if len(given) != len(parents):
                w.fail(
                    f"{row_path}.given",
                    f"instantiation {list(given)} does not match parents {list(parents)}",
                )
                continue
            if given in rows:
                w.fail(f"{row_path}.given", f"duplicate row for instantiation {list(given)}")
                continue
            ranks_obj = w.obj(row_obj.get("ranks"), f"{row_path}.ranks")
            rows[given] = {
                v: _decode_rank(r, f"{row_path}.ranks.{v}", w.diags)
                for v, r in ranks_obj.items()
            }
        families.append(Family(child=child, parents=parents, rows=rows))

    w.raise_if_failed()
    net = Network.build(variables, families, comment=comment)
    violations = net.validate()
    if violations:
        raise ParseError([Diagnostic("network", v) for v in violations])
    return net


# -- scenario documents --------------------------------------------------------


@dataclass(frozen=True)
class Assertion:
    """A timed value statement: an observation, or an action when role is
    "action" (value may then be "idle")."""

    t: int
    var: str
    value: str
    role: Role = "state"

    def node(self) -> str:
        return node_id(self.var, self.role, self.t)


@dataclass(frozen=True)
class QueryRef:
    t: int
    var: str
    role: Role = "state"

    def node(self) -> str:
        return node_id(self.var, self.role, self.t)


@dataclass(frozen=True)
class WhatIfBlock:
    delta: tuple[Assertion, ...]
    queries: tuple[QueryRef, ...]


@dataclass(frozen=True)
class ExplanationBlock:
    targets: tuple[QueryRef, ...]


@dataclass(frozen=True)
class ScenarioDocument:
    horizon: int
    network: str | None = None
    actions_from_slice: int = 0
    observations: tuple[Assertion, ...] = ()
    actions: tuple[Assertion, ...] = ()
    queries: tuple[QueryRef, ...] = ()
    explanations: tuple[ExplanationBlock, ...] = ()
    whatifs: tuple[WhatIfBlock, ...] = ()
    comment: str | None = None

    def evidence(self) -> dict[str, str]:
        """Observations and action assertions as node-level evidence."""
        out: dict[str, str] = {}
        for a in self.observations + self.actions:
            out[a.node()] = a.value
        return out

    def query_nodes(self) -> list[str]:
        return [q.node() for q in self.queries]

    def with_action(self, net: Network, t: int, var: str, value: str) -> "ScenarioDocument":
        """Record an action assertion, overwriting any earlier one at (t, var)."""
        if var not in net.variables:
            raise KeyError(f"unknown variable {var}")
        target = net.variables[var]
        if not target.controllable:
            raise ValueError(f"variable {var} is not controllable")
        if value != IDLE and value not in target.values:
            raise ValueError(f"{value!r} is not a value of {var} (or \"idle\")")
        if not 0 <= t <= self.horizon:
            raise ValueError(f"time {t} is outside the horizon 0..{self.horizon}")
        kept = tuple(a for a in self.actions if not (a.t == t and a.var == var))
        added = Assertion(t=t, var=var, value=value, role="action")
        return replace(self, actions=_sorted_assertions(kept + (added,)))

    def with_observation(self, net: Network, t: int, var: str, value: str) -> "ScenarioDocument":
        if var not in net.variables:
            raise KeyError(f"unknown variable {var}")
        if value not in net.variables[var].values:
            raise ValueError(f"{value!r} is not a value of {var}")
        if not 0 <= t <= self.horizon:
            raise ValueError(f"time {t} is outside the horizon 0..{self.horizon}")
        kept = tuple(
            a for a in self.observations if not (a.t == t and a.var == var and a.role == "state")
        )
        added = Assertion(t=t, var=var, value=value)
        return replace(self, observations=_sorted_assertions(kept + (added,)))


def _sorted_assertions(items: tuple[Assertion, ...]) -> tuple[Assertion, ...]:
    return tuple(sorted(items, key=lambda a: (a.t, a.var, a.role)))


def _sorted_queries(items: tuple[QueryRef, ...]) -> tuple[QueryRef, ...]:
    return tuple(sorted(items, key=lambda q: (q.t, q.var, q.role)))


def _assertion_to_json(a: Assertion, with_role: bool = True) -> dict:
    out: dict[str, Any] = {"t": a.t, "var": a.var, "value": a.value}
    if with_role:
        out["role"] = a.role
    return out


def _query_to_json(q: QueryRef) -> dict:
    return {"t": q.t, "var": q.var, "role": q.role}


def scenario_to_document(scn: ScenarioDocument) -> dict:
    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "horizon": scn.horizon,
        "actions_from_slice": scn.actions_from_slice,
        "observations": [
            _assertion_to_json(a) for a in _sorted_assertions(scn.observations)
        ],
        "actions": [
            _assertion_to_json(a, with_role=False)
            for a in _sorted_assertions(scn.actions)
        ],
        "queries": [_query_to_json(q) for q in _sorted_queries(scn.queries)],
        "explanations": [
            {"targets": [_query_to_json(q) for q in _sorted_queries(b.targets)]}
            for b in scn.explanations
        ],
        "whatifs": [
            {
                "delta": [_assertion_to_json(a) for a in _sorted_assertions(b.delta)],
                "queries": [_query_to_json(q) for q in _sorted_queries(b.queries)],
            }
            for b in scn.whatifs
        ],
    }
    if scn.network is not None:
        doc["network"] = scn.network
    if scn.comment is not None:
        doc["comment"] = scn.comment
    return doc


def serialize_scenario(scn: ScenarioDocument) -> str:
    return _dumps(scenario_to_document(scn))


def _parse_role(value: Any, path: str, w: _Walker) -> Role:
    if value is None:
        return "state"
    if value in ROLES:
        return value
    w.fail(path, f"expected one of {ROLES}, got {value!r}")
    return "state"


def _parse_assertion(entry: Any, path: str, w: _Walker, horizon: int, role: Role | None) -> Assertion:
    obj = w.obj(entry, path)
    t = w.int_(obj.get("t"), f"{path}.t")
    if not 0 <= t <= horizon:
        w.fail(f"{path}.t", f"time {t} is outside the horizon 0..{horizon}")
    return Assertion(
        t=t,
        var=w.str_(obj.get("var"), f"{path}.var"),
        value=w.str_(obj.get("value"), f"{path}.value"),
        role=role if role is not None else _parse_role(obj.get("role"), f"{path}.role", w),
    )


def _parse_query(entry: Any, path: str, w: _Walker, horizon: int) -> QueryRef:
    obj = w.obj(entry, path)
    t = w.int_(obj.get("t"), f"{path}.t")
    if not 0 <= t <= horizon:
        w.fail(f"{path}.t", f"time {t} is outside the horizon 0..{horizon}")
    return QueryRef(
        t=t,
        var=w.str_(obj.get("var"), f"{path}.var"),
        role=_parse_role(obj.get("role"), f"{path}.role", w),
    )


def parse_scenario(text: str) -> ScenarioDocument:
    return scenario_from_document(_loads(text))


def scenario_from_document(raw: Any) -> ScenarioDocument:
    w = _Walker()
    doc = w.obj(raw, "document")
    w.raise_if_failed()

    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        w.fail("format_version", f"unsupported format_version {version!r}")
    horizon = w.int_(doc.get("horizon"), "horizon")
    if horizon < 1:
        w.fail("horizon", f"horizon must be >= 1, got {horizon}")
        horizon = 1
    actions_from = w.int_(doc.get("actions_from_slice", 0), "actions_from_slice")
    if actions_from not in (0, 1):
        w.fail("actions_from_slice", f"expected 0 or 1, got {actions_from}")
        actions_from = 0

    network = doc.get("network")
    if network is not None and not isinstance(network, str):
        w.fail("network", f"expected a string, got {type(network).__name__}")
        network = None
    comment = doc.get("comment")
    if comment is not None and not isinstance(comment, str):
        w.fail("comment", f"expected a string, got {type(comment).__name__}")
        comment = None

    observations = tuple(
        _parse_assertion(entry, f"observations[{i}]", w, horizon, None)
        for i, entry in enumerate(w.arr(doc.get("observations", []), "observations"))
    )
    actions = tuple(
        _parse_assertion(entry, f"actions[{i}]", w, horizon, "action")
        for i, entry in enumerate(w.arr(doc.get("actions", []), "actions"))
    )
    queries = tuple(
        _parse_query(entry, f"queries[{i}]", w, horizon)
        for i, entry in enumerate(w.arr(doc.get("queries", []), "queries"))
    )
    explanations = []
    for i, entry in enumerate(w.arr(doc.get("explanations", []), "explanations")):
        path = f"explanations[{i}]"
        obj = w.obj(entry, path)
        targets = tuple(
            _parse_query(te, f"{path}.targets[{j}]", w, horizon)
            for j, te in enumerate(w.arr(obj.get("targets"), f"{path}.targets"))
        )
        explanations.append(ExplanationBlock(targets=targets))
    whatifs = []
    for i, entry in enumerate(w.arr(doc.get("whatifs", []), "whatifs")):
        path = f"whatifs[{i}]"
        obj = w.obj(entry, path)
        delta = tuple(
            _parse_assertion(de, f"{path}.delta[{j}]", w, horizon, None)
            for j, de in enumerate(w.arr(obj.get("delta", []), f"{path}.delta"))
        )
        wqueries = tuple(
            _parse_query(qe, f"{path}.queries[{j}]", w, horizon)
            for j, qe in enumerate(w.arr(obj.get("queries", []), f"{path}.queries"))
        )
        whatifs.append(WhatIfBlock(delta=delta, queries=wqueries))

    w.raise_if_failed()
    return ScenarioDocument(
        horizon=horizon,
        network=network,
        actions_from_slice=actions_from,
        observations=_sorted_assertions(observations),
        actions=_sorted_assertions(actions),
        queries=_sorted_queries(queries),
        explanations=tuple(explanations),
        whatifs=tuple(whatifs),
        comment=comment,
    )
