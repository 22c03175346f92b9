"""
Command-line front end: `caa validate | explore | run | races | classify |
convergence | codegen`.

Exit codes: 0 clean, 1 validation, 2 parse, 3 bound or unknown, 4 races
(or divergence) found.
"""
import random
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated, Optional

import typer
from rich.console import Console

from app import __version__
from app.constants.common import EXIT_OK, EXIT_PARSE, EXIT_RACES, EXIT_UNKNOWN, EXIT_VALIDATION
from app.constants.enums import ConvergenceOutcome, OutputFormat, PayloadMode, Tier
from app.core.config import settings
from app.core.exceptions import AppException, ProtocolSyntaxError
from app.core.log import configure_logging
from app.modules.analysis.compatibility import classify as classify_result
from app.modules.analysis.convergence import check_convergence
from app.modules.analysis.schemas import (
    ConvergenceDocument,
    RaceDocument,
    RacesDocument,
    VerdictDocument,
)
from app.modules.analysis.service import detect_races
from app.modules.dsl.erlang import emit_erlang
from app.modules.dsl.models import ProtocolDoc
from app.modules.dsl.parser import parse_protocol
from app.modules.dsl.service import load_protocol
from app.modules.semantics.explorer import explore as explore_protocol
from app.modules.semantics.explorer import run_one, to_dot
from app.modules.semantics.formatting import format_trace
from app.modules.semantics.schemas import Bounds, ExplorationDocument, TraceDocument

app = typer.Typer(help="Communicating actor automata: simulate, explore and analyse protocols.")
console = Console(no_color=not settings.COLOR, highlight=False, soft_wrap=True)
err_console = Console(stderr=True, no_color=not settings.COLOR, highlight=False, soft_wrap=True)

ProtocolFile = Annotated[
    Path, typer.Argument(exists=True, dir_okay=False, readable=True, help="Protocol file (.caa)")
]
MaxDepth = Annotated[
    Optional[int], typer.Option("--max-depth", min=1, help="Longest path explored")
]
MaxMailboxLen = Annotated[
    Optional[int], typer.Option("--max-mailbox-len", min=1, help="Longest mailbox allowed")
]
MaxStates = Annotated[
    Optional[int], typer.Option("--max-states", min=1, help="Most configurations expanded")
]
MaxTraces = Annotated[
    Optional[int], typer.Option("--max-traces", min=1, help="Most maximal traces enumerated")
]
Jobs = Annotated[
    Optional[int], typer.Option("--jobs", "-j", min=1, help="Worker threads [default: CPU count]")
]
StrictPayloads = Annotated[
    bool, typer.Option("--strict-payloads", help="Abort on payloads with unbound variables")
]
Format = Annotated[OutputFormat, typer.Option("--format", "-f", help="Output format")]


def _bounds(max_depth, max_mailbox_len, max_states, max_traces) -> Bounds:
    given = {
        "max_depth": max_depth,
        "max_mailbox_len": max_mailbox_len,
        "max_states": max_states,
        "max_traces": max_traces,
    }
    return Bounds(**{name: value for name, value in given.items() if value is not None})


def _payloads(strict: bool) -> Optional[PayloadMode]:
    return PayloadMode.STRICT if strict else None


def _read(file: Path) -> str:
    return file.read_text(encoding="utf-8")


def _load(file: Path, strict: bool = False) -> ProtocolDoc:
    return load_protocol(_read(file), strict=strict)


def _echo_json(document) -> None:
    typer.echo(document.model_dump_json(indent=2))


def _problem(severity: str, style: str, text: str) -> None:
    err_console.print(f"[{style}]{severity}[/{style}]", end=" ")
    err_console.print(text, markup=False)


@contextmanager
def _reporting(file: Path):
    """Print application errors the way compilers do and exit with their code."""
    try:
        yield
    except ProtocolSyntaxError as exc:
        for error in exc.errors:
            _problem("error", "red", f"[{error.code}] {file}:{error}")
        raise typer.Exit(EXIT_PARSE)
    except AppException as exc:
        _problem("error", "red", f"[{exc.error_code}] {file}: {exc.message}")
        raise typer.Exit(exc.exit_code)


@app.callback()
def main(
    log_level: Annotated[
        Optional[str], typer.Option("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    ] = None,
    version: Annotated[bool, typer.Option("--version", help="Print the version and exit")] = False,
):
    """Communicating actor automata workbench."""
    configure_logging(log_level)
    if version:
        console.print(f"caa {__version__}", markup=False)
        raise typer.Exit(EXIT_OK)


@app.command()
def validate(
    file: ProtocolFile,
    strict: Annotated[bool, typer.Option("--strict", help="Treat warnings as errors")] = False,
):
    """Check that a protocol is well-formed."""
    with _reporting(file):
        doc = parse_protocol(_read(file))

    for issue in doc.issues:
        _problem(issue.severity.value, "red" if issue.is_error else "yellow", f"{file}:{issue}")

    failing = doc.issues if strict else doc.errors
    if failing:
        console.print(f"[red]{file}: {len(failing)} problems[/red]")
        raise typer.Exit(EXIT_VALIDATION)
    console.print(f"[green]{file}: ok[/green] ({doc.protocol.arity} machines)")


@app.command()
def explore(
    file: ProtocolFile,
    max_depth: MaxDepth = None,
    max_mailbox_len: MaxMailboxLen = None,
    max_states: MaxStates = None,
    max_traces: MaxTraces = None,
    jobs: Jobs = None,
    strict_payloads: StrictPayloads = False,
    output: Format = OutputFormat.TEXT,
    traces: Annotated[bool, typer.Option("--traces", help="Print every maximal trace")] = False,
    dot: Annotated[
        Optional[Path], typer.Option("--dot", help="Write the reachability graph as Graphviz")
    ] = None,
):
    """Exhaustively explore the reachable configurations."""
    with _reporting(file):
        doc = _load(file)
        result = explore_protocol(
            doc.protocol,
            _bounds(max_depth, max_mailbox_len, max_states, max_traces),
            jobs,
            _payloads(strict_payloads),
        )

    if dot is not None:
        dot.write_text(to_dot(result), encoding="utf-8")

    if output is OutputFormat.JSON:
        _echo_json(ExplorationDocument.from_result(result, include_traces=traces))
    else:
        if traces:
            for index, trace in enumerate(result.traces):
                typer.echo(format_trace(trace, title=f"trace {index}"))
                typer.echo("")
        maximal = sum(1 for t in result.traces if t.is_maximal)
        typer.echo(f"reachable states: {result.reachable_states}")
        typer.echo(f"edges: {result.edge_count}")
        typer.echo(f"maximal traces: {maximal}")
        style = "green" if result.complete else "yellow"
        console.print(f"verdict: [{style}]{result.verdict}[/{style}]")

    raise typer.Exit(EXIT_OK if result.complete else EXIT_UNKNOWN)


@app.command()
def run(
    file: ProtocolFile,
    seed: Annotated[
        Optional[int], typer.Option("--seed", help="Random seed [default: fresh, printed]")
    ] = None,
    max_depth: MaxDepth = None,
    max_mailbox_len: MaxMailboxLen = None,
    strict_payloads: StrictPayloads = False,
    output: Format = OutputFormat.TEXT,
):
    """Follow one random run through the protocol."""
    if seed is None:
        seed = random.SystemRandom().randrange(2**32)
        err_console.print(f"seed: {seed}", markup=False)

    with _reporting(file):
        doc = _load(file)
        trace = run_one(
            doc.protocol,
            seed,
            _bounds(max_depth, max_mailbox_len, None, None),
            _payloads(strict_payloads),
        )

    if output is OutputFormat.JSON:
        _echo_json(TraceDocument.from_trace(doc.protocol, trace))
    else:
        typer.echo(format_trace(trace))
    raise typer.Exit(EXIT_OK if trace.is_maximal else EXIT_UNKNOWN)


@app.command()
def races(
    file: ProtocolFile,
    max_depth: MaxDepth = None,
    max_mailbox_len: MaxMailboxLen = None,
    max_states: MaxStates = None,
    max_traces: MaxTraces = None,
    jobs: Jobs = None,
    output: Format = OutputFormat.TEXT,
):
    """Report receive states where message arrival order decides the outcome."""
    with _reporting(file):
        doc = _load(file)
        bounds = _bounds(max_depth, max_mailbox_len, max_states, max_traces)
        result = explore_protocol(doc.protocol, bounds, jobs)
        reports = detect_races(result)

    if output is OutputFormat.JSON:
        _echo_json(RacesDocument(
            race_free=not reports,
            traces_checked=len(result.traces),
            races=[RaceDocument.from_report(doc.protocol, r) for r in reports],
        ))
    else:
        for report in reports:
            typer.echo(str(report))
            for witness in report.witnesses:
                typer.echo(f"    {witness.message} via ?{witness.pattern} -> {witness.target}")
            title = f"  reached by trace {report.trace_index}:"
            typer.echo(format_trace(report.trace_prefix, title=title))
            typer.echo("")
        if reports:
            console.print(f"[red]{len(reports)} races[/red] over {len(result.traces)} traces")
        else:
            console.print(f"[green]race-free[/green] over {len(result.traces)} traces")

    raise typer.Exit(EXIT_RACES if reports else EXIT_OK)


@app.command()
def classify(
    file: ProtocolFile,
    max_depth: MaxDepth = None,
    max_mailbox_len: MaxMailboxLen = None,
    max_states: MaxStates = None,
    max_traces: MaxTraces = None,
    jobs: Jobs = None,
    output: Format = OutputFormat.TEXT,
):
    """Compatibility tier of the protocol's terminal configurations."""
    with _reporting(file):
        doc = _load(file)
        bounds = _bounds(max_depth, max_mailbox_len, max_states, max_traces)
        verdict = classify_result(explore_protocol(doc.protocol, bounds, jobs))

    if output is OutputFormat.JSON:
        _echo_json(VerdictDocument.from_verdict(verdict))
    else:
        typer.echo(verdict.tier.value)
        err_console.print(verdict.reason, markup=False)
    raise typer.Exit(EXIT_UNKNOWN if verdict.tier is Tier.UNKNOWN else EXIT_OK)


@app.command()
def convergence(
    file: ProtocolFile,
    max_depth: MaxDepth = None,
    max_mailbox_len: MaxMailboxLen = None,
    max_states: MaxStates = None,
    max_traces: MaxTraces = None,
    jobs: Jobs = None,
    output: Format = OutputFormat.TEXT,
):
    """Check that every run of a binary protocol ends in the same configuration."""
    with _reporting(file):
        doc = _load(file)
        bounds = _bounds(max_depth, max_mailbox_len, max_states, max_traces)
        result = check_convergence(doc.protocol, bounds, jobs)

    if output is OutputFormat.JSON:
        _echo_json(ConvergenceDocument.from_result(doc.protocol, result))
    else:
        typer.echo(
            f"{result.outcome.value} ({result.trace_count} traces, "
            f"largest incoming group {result.max_incoming})"
        )
        if result.reason:
            err_console.print(result.reason, markup=False)
        if result.outcome is ConvergenceOutcome.DIVERGES:
            for index, trace in enumerate(result.traces):
                typer.echo(format_trace(trace, title=f"witness {index}"))
            typer.echo(f"first difference at position {result.first_difference}")

    codes = {
        ConvergenceOutcome.CONVERGES: EXIT_OK,
        ConvergenceOutcome.DIVERGES: EXIT_RACES,
        ConvergenceOutcome.UNKNOWN: EXIT_UNKNOWN,
    }
    raise typer.Exit(codes[result.outcome])


@app.command()
def codegen(
    file: ProtocolFile,
    out: Annotated[
        Path, typer.Option("--out", "-o", file_okay=False, help="Output directory")
    ] = Path("."),
):
    """Write one Erlang skeleton module per machine."""
    with _reporting(file):
        doc = _load(file)
        modules = emit_erlang(doc.protocol)

    out.mkdir(parents=True, exist_ok=True)
    for name, source in modules.items():
        path = out / f"{name}.erl"
        path.write_text(source, encoding="utf-8")
        typer.echo(str(path))


if __name__ == "__main__":
    app()
