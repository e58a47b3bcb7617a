"""HTTP session service.

Sessions hold a network, a horizon, and a set of assertions (observations
and actions) over the unfolded network. Assertions are applied in atomic
batches: a batch that would push the evidence rank to infinity is
rejected with 409 and a minimal conflicting subset, and the session is
left untouched. Belief reads and what-if comparisons run on an immutable
snapshot, so concurrent requests to different sessions never interact and
a what-if never mutates anything.

Rank payloads are integers or the string "inf", with a display bucket per
value so clients can render beliefs without rank arithmetic.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from typing import Any, Literal, Optional

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel, Field

from .fileformat import (
    Assertion,
    ParseError,
    ScenarioDocument,
    network_from_document,
    network_to_document,
    scenario_to_document,
)
from .inference import Posterior, eliminate, evidence_rank, whatif
from .network import IDLE, Network
from .ranks import INF, Rank
from .temporal import TemporalNetwork, node_id, parse_node_id, unfold

Kind = Literal["observe", "act"]
RoleName = Literal["state", "suppressor", "inertia", "action"]


def encode_rank(rank: Rank) -> int | str:
    return "inf" if rank == INF else int(rank)


def rank_bucket(rank: Rank) -> str:
    """Display hint: 0 plausible, 1-2 surprising, >=3 very_surprising, inf impossible."""
    if rank == INF:
        return "impossible"
    if rank == 0:
        return "plausible"
    if rank <= 2:
        return "surprising"
    return "very_surprising"


class AssertionIn(BaseModel):
    t: int
    var: str
    value: str
    kind: Kind = "observe"
    role: Optional[RoleName] = None

    def as_assertion(self) -> Assertion:
        role = self.role or ("action" if self.kind == "act" else "state")
        return Assertion(t=self.t, var=self.var, value=self.value, role=role)


class RemovalIn(BaseModel):
    t: int
    var: str
    kind: Kind = "observe"
    role: Optional[RoleName] = None

    def node(self) -> str:
        role = self.role or ("action" if self.kind == "act" else "state")
        return node_id(self.var, role, self.t)


class AssertionsUpdate(BaseModel):
    add: list[AssertionIn] = Field(default_factory=list)
    remove: list[RemovalIn] = Field(default_factory=list)


class QueryIn(BaseModel):
    t: int
    var: str
    role: RoleName = "state"


class SessionCreate(BaseModel):
    network: str
    horizon: int = Field(ge=1)
    actions_from_slice: int = Field(default=0, ge=0, le=1)
    snapshot: Optional[dict] = None


class WhatIfIn(BaseModel):
    delta: list[AssertionIn] = Field(default_factory=list)
    queries: Optional[list[QueryIn]] = None


@dataclass
class Session:
    id: str
    network_id: str
    temporal: TemporalNetwork
    actions_from_slice: int
    assertions: dict[str, Assertion] = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def horizon(self) -> int:
        return self.temporal.horizon

    def evidence(self) -> dict[str, str]:
        return {node: a.value for node, a in self.assertions.items()}


class Store:
    """In-memory networks and sessions; cross-session access is parallel."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.networks: dict[str, Network] = {}
        self.sessions: dict[str, Session] = {}

    def add_network(self, net: Network) -> str:
        nid = uuid.uuid4().hex[:12]
        with self._lock:
            self.networks[nid] = net
        return nid

    def network(self, nid: str) -> Network:
        with self._lock:
            if nid not in self.networks:
                raise HTTPException(404, f"no network {nid}")
            return self.networks[nid]

    def add_session(self, session: Session) -> None:
        with self._lock:
            self.sessions[session.id] = session

    def session(self, sid: str) -> Session:
        with self._lock:
            if sid not in self.sessions:
                raise HTTPException(404, f"no session {sid}")
            return self.sessions[sid]

    def drop_session(self, sid: str) -> None:
        with self._lock:
            if sid not in self.sessions:
                raise HTTPException(404, f"no session {sid}")
            del self.sessions[sid]


def _validate_assertion(session: Session, a: Assertion) -> str:
    base = session.temporal.base
    if a.var not in base.variables:
        raise HTTPException(422, f"unknown variable {a.var}")
    if not 0 <= a.t <= session.horizon:
        raise HTTPException(422, f"time {a.t} is outside the horizon 0..{session.horizon}")
    node = node_id(a.var, a.role, a.t)
    net = session.temporal.network
    if node not in net.variables:
        raise HTTPException(422, f"node {node} does not exist in the unfolded network")
    if a.value not in net.variables[node].values:
        raise HTTPException(422, f"{a.value!r} is not a value of {node}")
    return node


def _minimal_conflict(net: Network, evidence: dict[str, str]) -> list[str]:
    """Greedy deletion: a subset that stays inconsistent and is minimal for it."""
    core = dict(evidence)
    for node in sorted(evidence):
        trial = {k: v for k, v in core.items() if k != node}
        if evidence_rank(net, trial) == INF:
            core = trial
    return sorted(core)


def _belief_entries(session: Session, nodes: list[str]) -> list[dict[str, Any]]:
    net = session.temporal.network
    posteriors = eliminate(net, session.evidence(), nodes)
    return [_entry(session, posteriors[node]) for node in nodes]


def _entry(session: Session, posterior: Posterior) -> dict[str, Any]:
    node = posterior.node
    var, role, t = parse_node_id(node)
    asserted = session.assertions.get(node)
    return {
        "node": node,
        "var": var,
        "role": role,
        "t": t,
        "ranks": {v: encode_rank(r) for v, r in posterior.ranks.items()},
        "buckets": {v: rank_bucket(r) for v, r in posterior.ranks.items()},
        "believed": posterior.believed_value(),
        "asserted": None
        if asserted is None
        else {"value": asserted.value, "kind": "act" if asserted.role == "action" else "observe"},
    }


def _parse_vars_param(session: Session, vars_param: str | None) -> list[str]:
    net = session.temporal.network
    if not vars_param:
        base = session.temporal.base
        return [
            node_id(var, "state", t)
            for var in base.variables
            for t in range(session.horizon + 1)
        ]
    nodes: list[str] = []
    for item in vars_param.split(","):
        item = item.strip()
        if not item:
            continue
        if item in net.variables:
            nodes.append(item)
        elif item in session.temporal.base.variables:
            nodes.extend(node_id(item, "state", t) for t in range(session.horizon + 1))
        else:
            raise HTTPException(422, f"unknown variable or node {item}")
    return nodes


def create_app(store: Store | None = None, ui_dir: str | None = None) -> FastAPI:
    store = store if store is not None else Store()
    app = FastAPI(title="anet session service")
    app.state.store = store

    @app.post("/networks", status_code=201)
    def upload_network(document: dict) -> dict:
        try:
            net = network_from_document(document)
        except ParseError as exc:
            raise HTTPException(422, detail=[str(d) for d in exc.diagnostics])
        return {"id": store.add_network(net)}

    @app.get("/networks/{nid}")
    def get_network(nid: str) -> dict:
        return network_to_document(store.network(nid))

    @app.post("/sessions", status_code=201)
    def create_session(payload: SessionCreate) -> dict:
        net = store.network(payload.network)
        try:
            temporal = unfold(net, payload.horizon, payload.actions_from_slice)
        except ValueError as exc:
            raise HTTPException(422, str(exc))
        session = Session(
            id=uuid.uuid4().hex[:12],
            network_id=payload.network,
            temporal=temporal,
            actions_from_slice=payload.actions_from_slice,
        )
        if payload.snapshot is not None:
            _restore_snapshot(session, payload.snapshot)
        store.add_session(session)
        return {"id": session.id, "horizon": session.horizon}

    def _restore_snapshot(session: Session, snapshot: dict) -> None:
        from .fileformat import scenario_from_document

        try:
            doc = scenario_from_document(snapshot)
        except ParseError as exc:
            raise HTTPException(422, detail=[str(d) for d in exc.diagnostics])
        for a in doc.observations + doc.actions:
            node = _validate_assertion(session, a)
            session.assertions[node] = a
        if evidence_rank(session.temporal.network, session.evidence()) == INF:
            raise HTTPException(
                409,
                detail={
                    "conflict": _minimal_conflict(session.temporal.network, session.evidence())
                },
            )

    @app.get("/sessions/{sid}")
    def get_session(sid: str) -> dict:
        session = store.session(sid)
        with session.lock:
            return {
                "id": session.id,
                "network": session.network_id,
                "horizon": session.horizon,
                "actions_from_slice": session.actions_from_slice,
                "assertions": [
                    {
                        "t": a.t,
                        "var": a.var,
                        "value": a.value,
                        "role": a.role,
                        "kind": "act" if a.role == "action" else "observe",
                    }
                    for _, a in sorted(session.assertions.items())
                ],
                "evidence_rank": encode_rank(
                    evidence_rank(session.temporal.network, session.evidence())
                ),
            }

    @app.get("/sessions/{sid}/snapshot")
    def get_snapshot(sid: str) -> dict:
        session = store.session(sid)
        with session.lock:
            observations = tuple(
                a for a in session.assertions.values() if a.role != "action"
            )
            actions = tuple(a for a in session.assertions.values() if a.role == "action")
            doc = ScenarioDocument(
                horizon=session.horizon,
                actions_from_slice=session.actions_from_slice,
                observations=observations,
                actions=actions,
            )
            return scenario_to_document(doc)

    @app.put("/sessions/{sid}/assertions")
    def put_assertions(sid: str, update: AssertionsUpdate) -> dict:
        session = store.session(sid)
        with session.lock:
            trial = dict(session.assertions)
            for removal in update.remove:
                trial.pop(removal.node(), None)
            for item in update.add:
                a = item.as_assertion()
                node = _validate_assertion(session, a)
                if item.kind == "act":
                    target = session.temporal.base.variables[a.var]
                    if not target.controllable:
                        raise HTTPException(422, f"variable {a.var} is not controllable")
                    if a.value != IDLE and a.value not in target.values:
                        raise HTTPException(422, f"{a.value!r} is not a value of {a.var}")
                trial[node] = a
            evidence = {node: a.value for node, a in trial.items()}
            rank = evidence_rank(session.temporal.network, evidence)
            if rank == INF:
                raise HTTPException(
                    409,
                    detail={
                        "message": "assertions are jointly impossible",
                        "conflict": _minimal_conflict(session.temporal.network, evidence),
                    },
                )
            session.assertions = trial
            return {"evidence_rank": encode_rank(rank), "count": len(trial)}

    @app.get("/sessions/{sid}/beliefs")
    def get_beliefs(sid: str, vars: str | None = Query(default=None)) -> dict:
        session = store.session(sid)
        with session.lock:
            nodes = _parse_vars_param(session, vars)
            return {
                "horizon": session.horizon,
                "beliefs": _belief_entries(session, nodes),
            }

    @app.post("/sessions/{sid}/whatif")
    def post_whatif(sid: str, payload: WhatIfIn) -> dict:
        session = store.session(sid)
        with session.lock:
            delta: dict[str, str] = {}
            for item in payload.delta:
                a = item.as_assertion()
                node = _validate_assertion(session, a)
                delta[node] = a.value
            if payload.queries is None:
                nodes = _parse_vars_param(session, None)
            else:
                nodes = [node_id(q.var, q.role, q.t) for q in payload.queries]
                for n in nodes:
                    if n not in session.temporal.network.variables:
                        raise HTTPException(422, f"unknown node {n}")
            result = whatif(session.temporal.network, session.evidence(), delta, nodes)

            def render(side, err):
                if err is not None:
                    return {"error": err}
                return {"beliefs": [_entry(session, side[n]) for n in nodes]}

            diffs = None
            if result.diffs is not None:
                diffs = [
                    {
                        "node": n,
                        "deltas": {
                            v: ("inf" if d == INF else "-inf" if d == -INF else int(d))
                            for v, d in result.diffs[n].items()
                        },
                    }
                    for n in nodes
                ]
            return {
                "base": render(result.base, result.base_error),
                "hypothetical": render(result.hypothetical, result.hypothetical_error),
                "diffs": diffs,
            }

    @app.delete("/sessions/{sid}", status_code=204)
    def delete_session(sid: str) -> None:
        store.drop_session(sid)

    if ui_dir is None:
        import pathlib

        candidate = pathlib.Path("frontend") / "dist"
        if candidate.is_dir():
            ui_dir = str(candidate)
    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
