"""Command-line driver.

Exit codes: 0 success, 1 domain errors (diagnostics on stderr), 2 usage
errors (click's default).
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click

from .expansion import expand_network
from .fileformat import (
    ParseError,
    ScenarioDocument,
    parse_network,
    parse_scenario,
    serialize_network,
)
from .inference import (
    Posterior,
    eliminate,
    evidence_rank,
    most_surprising_explanations,
    whatif,
)
from .network import InvalidNetworkError, Network
from .ranks import INF, Rank
from .temporal import unfold

DEFAULT_PORT = 8347


class DomainError(click.ClickException):
    exit_code = 1


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(str(exc)) from exc


def _load_network(path: str) -> Network:
    try:
        return parse_network(_read(path))
    except ParseError as exc:
        raise DomainError(f"{path}: {exc}") from exc


def _load_scenario(path: str) -> ScenarioDocument:
    try:
        return parse_scenario(_read(path))
    except ParseError as exc:
        raise DomainError(f"{path}: {exc}") from exc


def fmt_rank(rank: Rank) -> str:
    return "inf" if rank == INF else str(rank)


def rank_bucket(rank: Rank) -> str:
    if rank == INF:
        return "impossible"
    if rank == 0:
        return "plausible"
    if rank <= 2:
        return "surprising"
    return "very surprising"


def _print_posteriors(posteriors: dict[str, Posterior], order: list[str]) -> None:
    width = max((len(n) for n in order), default=4)
    for node in order:
        post = posteriors[node]
        cells = "  ".join(f"{v}={fmt_rank(r)}" for v, r in post.ranks.items())
        believed = post.believed_value()
        note = f"  (believed {believed})" if believed is not None else ""
        click.echo(f"{node:<{width}}  {cells}{note}")


@click.group()
def main() -> None:
    """Ranked action networks: validate, expand, unfold, query, run, serve."""


@main.command()
@click.argument("network_file")
def validate(network_file: str) -> None:
    """Parse and validate a network file."""
    net = _load_network(network_file)
    click.echo(f"ok: {len(net.variables)} variables, {len(net.families)} families")


@main.command()
@click.argument("network_file")
@click.option("--targets", help="Comma-separated variables to expand (default: all persistences).")
@click.option("-o", "--output", help="Write to a file instead of stdout.")
def expand(network_file: str, targets: str | None, output: str | None) -> None:
    """Expand families into their deterministic suppressor form."""
    net = _load_network(network_file)
    chosen = set(targets.split(",")) if targets else None
    try:
        expanded = expand_network(net, chosen)
    except (KeyError, ValueError) as exc:
        raise DomainError(str(exc)) from exc
    text = serialize_network(expanded)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


@main.command("unfold")
@click.argument("network_file")
@click.option("--horizon", "-T", type=int, required=True, help="Last time slice (>= 1).")
@click.option("--actions-from-slice", type=click.IntRange(0, 1), default=0, show_default=True)
@click.option("-o", "--output", help="Write to a file instead of stdout.")
def unfold_cmd(network_file: str, horizon: int, actions_from_slice: int, output: str | None) -> None:
    """Unfold a network over a time horizon."""
    net = _load_network(network_file)
    try:
        temporal = unfold(net, horizon, actions_from_slice)
    except (ValueError, InvalidNetworkError) as exc:
        raise DomainError(str(exc)) from exc
    text = serialize_network(temporal.network)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


@main.command()
@click.argument("network_file")
@click.argument("scenario_file")
def query(network_file: str, scenario_file: str) -> None:
    """Run a scenario's queries against an explicitly given network."""
    net = _load_network(network_file)
    scenario = _load_scenario(scenario_file)
    _run_scenario(net, scenario)


@main.command()
@click.argument("scenario_file")
def run(scenario_file: str) -> None:
    """Run every block of a scenario against its referenced network."""
    scenario = _load_scenario(scenario_file)
    if scenario.network is None:
        raise DomainError(f"{scenario_file}: scenario names no network file")
    net_path = Path(scenario_file).parent / scenario.network
    net = _load_network(str(net_path))
    _run_scenario(net, scenario)


def _run_scenario(net: Network, scenario: ScenarioDocument) -> None:
    try:
        temporal = unfold(net, scenario.horizon, scenario.actions_from_slice)
    except (ValueError, InvalidNetworkError) as exc:
        raise DomainError(str(exc)) from exc
    evidence = scenario.evidence()
    try:
        base_rank = evidence_rank(temporal.network, evidence)
        if base_rank == INF:
            raise DomainError("evidence is inconsistent (rank inf)")
        click.echo(f"evidence rank: {fmt_rank(base_rank)}")
        if scenario.queries:
            nodes = scenario.query_nodes()
            posteriors = eliminate(temporal.network, evidence, nodes)
            click.echo("beliefs:")
            _print_posteriors(posteriors, nodes)
        for block in scenario.explanations:
            targets = [q.node() for q in block.targets]
            result = most_surprising_explanations(temporal.network, evidence, targets)
            click.echo(f"explanations over {', '.join(targets)}:")
            for assignment, rank in result.assignments:
                cells = "  ".join(f"{k}={v}" for k, v in assignment.items())
                click.echo(f"  rank {fmt_rank(rank)}: {cells}")
        for block in scenario.whatifs:
            delta = {a.node(): a.value for a in block.delta}
            nodes = [q.node() for q in block.queries] or scenario.query_nodes()
            result = whatif(temporal.network, evidence, delta, nodes)
            click.echo(f"what-if {delta}:")
            for label, side, err in [
                ("base", result.base, result.base_error),
                ("hypothetical", result.hypothetical, result.hypothetical_error),
            ]:
                if err is not None:
                    click.echo(f"  {label}: inconsistent ({err})")
                else:
                    click.echo(f"  {label}:")
                    for node in nodes:
                        post = side[node]
                        cells = "  ".join(f"{v}={fmt_rank(r)}" for v, r in post.ranks.items())
                        click.echo(f"    {node}  {cells}")
    except (KeyError, ValueError) as exc:
        raise DomainError(str(exc)) from exc


@main.command()
@click.option("--port", type=int, default=None, help="Defaults to ANET_PORT or 8347.")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option(
    "--ui",
    "ui_dir",
    default=None,
    help="Directory of built explorer assets to serve at /ui (default: frontend/dist if present).",
)
def serve(port: int | None, host: str, ui_dir: str | None) -> None:
    """Start the HTTP session service."""
    import uvicorn

    from .service import create_app

    if port is None:
        port = int(os.environ.get("ANET_PORT", DEFAULT_PORT))
    app = create_app(ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    sys.exit(main())
