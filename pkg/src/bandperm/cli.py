from __future__ import annotations

import logging
import sys
from dataclasses import replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, NoReturn, Optional, Tuple

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from . import __version__
from .config import ConfigService
from .documents import (
    bc_from_document,
    bc_to_document,
    document_name,
    dumps,
    layers_from_document,
    layers_to_document,
    loads,
    permutation_from_document,
    permutation_to_document,
)
from .errors import BandpermError, BoundViolation, DocumentError, InvalidPermutation
from .factorize import (
    crossing_diagnostics,
    concurrent_points,
    distinct_crossing_lines,
    factor_bc,
    factor_full,
    factor_layers,
    reconstruct_bc,
    reconstruct_full,
    reconstruct_layers,
)
from .fixtures import FIXTURES, get_fixture
from .index import center, dependent_rows, find_split, minus_index, plus_index_sweep, window_R
from .permutations import BandedPermutation, Periodic, equals
from .render import render_ascii, render_dot
from .storage import Storage
from .utils import dump_json, parse_range
from .verify import VerifyConfig, VerifyRunner


EXIT_PROPERTY = 1
EXIT_INPUT = 2
EXIT_INVARIANT = 3
EXIT_BOUND = 4

console = Console()
err_console = Console(stderr=True)

app = typer.Typer(help="bandperm - index and factorization of banded permutation matrices", add_completion=False)
config_app = typer.Typer(help="Configure bandperm defaults", add_completion=False)
runs_app = typer.Typer(help="Inspect recorded verification runs", add_completion=False)

app.add_typer(config_app, name="config")
app.add_typer(runs_app, name="runs")


class FactorMode(str, Enum):
    bc = "bc"
    layers = "layers"
    full = "full"


class RenderFormat(str, Enum):
    ascii = "ascii"
    dot = "dot"


INPUT_HELP = "Permutation document (JSON file). Use '-' or omit to read stdin."


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def _fail(message: object, code: int) -> NoReturn:
    err_console.print(str(message), style="red", markup=False, highlight=False)
    raise typer.Exit(code=code)


def _emit(data: Any, *, indent: Optional[int] = 2) -> None:
    typer.echo(dump_json(data, indent=indent))


def _read_document(source: str) -> Dict[str, Any]:
    if source == "-" and sys.stdin.isatty():
        _fail("No permutation document provided. Pass a file or pipe JSON on stdin.", EXIT_INPUT)
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        _fail(f"Cannot read {source}: {exc.strerror or exc}", EXIT_INPUT)
    try:
        return loads(text)
    except DocumentError as exc:
        _fail(exc, EXIT_INPUT)


def _load_permutation(source: str) -> Tuple[BandedPermutation, Optional[str]]:
    doc = _read_document(source)
    try:
        return permutation_from_document(doc), document_name(doc)
    except DocumentError as exc:
        _fail(exc, EXIT_INPUT)
    except InvalidPermutation as exc:
        _fail(exc, EXIT_INVARIANT)


def _parse_range_option(value: str, option: str) -> range:
    try:
        return parse_range(value)
    except ValueError as exc:
        _fail(f"{option}: {exc}", EXIT_INPUT)


def _verdict(ok: bool) -> str:
    return "ok" if ok else "mismatch"


@app.callback()
def main_callback(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log library debug output to stderr"),
) -> None:
    _configure_logging(verbose)


@app.command()
def version() -> None:
    """Show the bandperm version."""

    console.print(f"bandperm version {__version__}")


@app.command()
def index(
    source: str = typer.Argument("-", metavar="INPUT", help=INPUT_HELP),
    jstar: int = typer.Option(0, "--jstar", help="Column j* that places the 2w-row window"),
    sweep: Optional[str] = typer.Option(None, "--sweep", help="Also compute the index for every j* in lo:hi"),
) -> None:
    """Compute the plus-index from 2w consecutive rows."""

    P, name = _load_permutation(source)
    window = window_R(P, jstar)
    split = find_split(P)
    report: Dict[str, Any] = {}
    if name is not None:
        report["name"] = name
    report.update(
        {
            "w": window.w,
            "jstar": jstar,
            "n": window.n,
            "kappa": window.kappa,
            "minus_index": minus_index(P),
            "main_diagonal_offset": window.kappa,
            "dependent_rows": dependent_rows(P, jstar),
            "split": None if split is None else {"istar": split.istar, "jstar": split.jstar},
            "centered": permutation_to_document(center(P).centered),
        }
    )
    if sweep is not None:
        values = plus_index_sweep(P, _parse_range_option(sweep, "--sweep"))
        report["sweep"] = {str(j): kappa for j, kappa in values.items()}
        report["sweep_constant"] = len(set(values.values())) <= 1
    _emit(report)


@app.command("center")
def center_command(source: str = typer.Argument("-", metavar="INPUT", help=INPUT_HELP)) -> None:
    """Cancel the index: print κ and the centered permutation S^κ P."""

    P, _ = _load_permutation(source)
    centering = center(P)
    _emit({"kappa": centering.kappa, "centered": permutation_to_document(centering.centered)})


def _crossing_rows(P_c: BandedPermutation) -> range:
    w = P_c.bandwidth()
    if isinstance(P_c, Periodic):
        return range(0, P_c.period * 2 * max(w, 1))
    span = P_c.non_trivial_range()
    return range(span.start - w, span.stop + w)


@app.command()
def factor(
    source: str = typer.Argument("-", metavar="INPUT", help=INPUT_HELP),
    mode: FactorMode = typer.Option(FactorMode.bc, "--mode", "-m", help="bc, layers, or full (S^-κ F1...FN)"),
) -> None:
    """Factor the centered permutation into B·C or into transposition layers."""

    P, _ = _load_permutation(source)
    centering = center(P)
    P_c = centering.centered
    report: Dict[str, Any] = {"mode": mode.value, "kappa": centering.kappa, "w": P_c.bandwidth()}
    if centering.kappa and mode != FactorMode.full:
        report["warning"] = f"input has plus-index {centering.kappa}; factored the centered S^kappa P"

    # Each verdict is computed from the factorization document as printed.
    try:
        if mode == FactorMode.bc:
            f = factor_bc(P_c)
            report["factorization"] = bc_to_document(f)
            printed = bc_from_document(report["factorization"])
            report["reconstruction"] = _verdict(equals(reconstruct_bc(printed), P_c))
        elif mode == FactorMode.layers:
            layers = factor_layers(P_c)
            crossings = crossing_diagnostics(P_c, _crossing_rows(P_c))
            report["N"] = layers.N
            report["bound"] = 2 * P_c.bandwidth()
            report["factorization"] = layers_to_document(layers)
            report["crossing_lines"] = len(distinct_crossing_lines(crossings))
            report["concurrent_points"] = len(concurrent_points(P_c, crossings))
            printed_layers = layers_from_document(report["factorization"])
            report["reconstruction"] = _verdict(equals(reconstruct_layers(printed_layers), P_c))
        else:
            full = factor_full(P)
            report["centered"] = permutation_to_document(full.centered)
            report["N"] = full.layers.N
            report["factorization"] = layers_to_document(full.layers)
            printed_full = replace(full, layers=layers_from_document(report["factorization"]))
            report["reconstruction"] = _verdict(equals(reconstruct_full(printed_full), P))
    except BoundViolation as exc:
        _emit(
            {
                "error": "bound_violation",
                "layers": exc.layers,
                "bound": exc.bound,
                "instance": permutation_to_document(exc.instance),
            }
        )
        _fail(exc, EXIT_BOUND)
    except BandpermError as exc:
        _fail(exc, EXIT_INVARIANT)
    _emit(report)


def _print_verdicts(report: Dict[str, Any], run_id: int) -> None:
    table = Table(show_header=True, header_style="bold")
    table.add_column("Property")
    table.add_column("Checked")
    table.add_column("Failures")
    table.add_column("Result")
    table.add_column("First failure", overflow="fold")
    for result in report["results"]:
        failure = result["first_failure"]
        table.add_row(
            result["property"],
            str(result["checked"]),
            str(result["failures"]),
            "[green]pass[/green]" if result["passed"] else "[red]FAIL[/red]",
            (failure["message"] if failure else "")[:120],
        )
    console.print(table)
    overall = "[green]all properties hold[/green]" if report["passed"] else "[red]some properties failed[/red]"
    console.print(f"Run [bold]{run_id}[/bold] (seed={report['seed']}, trials={report['trials']}): {overall}")


@app.command()
def verify(
    source: Optional[str] = typer.Argument(None, metavar="[INPUT]", help="Optional permutation document ('-' for stdin)"),
    trials: Optional[int] = typer.Option(None, "--trials", "-n", min=0, help="Random instances (default: config verify_trials)"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Random seed (default: config verify_seed)"),
    table: bool = typer.Option(False, "--table", help="Show the verdicts as a table instead of JSON"),
) -> None:
    """Run the property suite on the input and on seeded random instances."""

    P, name = _load_permutation(source) if source is not None else (None, None)
    try:
        config = VerifyConfig.from_service(ConfigService(), trials=trials, seed=seed)
    except ValueError as exc:
        _fail(exc, EXIT_INPUT)
    report = VerifyRunner(config=config).run(P, name)
    run = Storage().record_run(report)
    if table:
        _print_verdicts(report, run.id)
    else:
        _emit(report)
    if not report["passed"]:
        raise typer.Exit(code=EXIT_PROPERTY)


@app.command()
def render(
    source: str = typer.Argument("-", metavar="INPUT", help=INPUT_HELP),
    fmt: RenderFormat = typer.Option(RenderFormat.ascii, "--format", "-f", help="ascii matrix or dot arrow graph"),
    rows: Optional[str] = typer.Option(None, "--rows", help="Row range lo:hi (default: non-trivial part ± w)"),
) -> None:
    """Draw a finite window of the matrix, or its i -> j arrows."""

    P, _ = _load_permutation(source)
    if rows is not None:
        row_range = _parse_range_option(rows, "--rows")
    else:
        span, w = P.non_trivial_range(), P.bandwidth()
        row_range = range(span.start - w - 1, span.stop + w + 1)
    output = render_ascii(P, row_range) if fmt == RenderFormat.ascii else render_dot(P, row_range)
    typer.echo(output, nl=False)


@app.command()
def examples(
    name: Optional[str] = typer.Option(None, "--name", help="Fixture to print as a document"),
) -> None:
    """List the named example permutations, or print one."""

    if name is None:
        table = Table(show_header=True, header_style="bold")
        table.add_column("Name")
        table.add_column("Note", overflow="fold")
        for fixture in FIXTURES.values():
            table.add_row(fixture.name, fixture.note)
        console.print(table)
        return
    try:
        fixture = get_fixture(name)
    except KeyError as exc:
        _fail(exc.args[0], EXIT_INPUT)
    typer.echo(dumps(fixture.document()))


@runs_app.command("list")
def runs_list(
    limit: Optional[int] = typer.Option(None, "--limit", min=1, help="Show only the latest runs"),
) -> None:
    """List recorded verification runs."""

    runs = Storage().list_runs(limit=limit)
    if not runs:
        console.print("No verification runs recorded")
        return

    table = Table(show_header=True, header_style="bold")
    table.add_column("ID")
    table.add_column("Created")
    table.add_column("Seed")
    table.add_column("Trials")
    table.add_column("Input", overflow="fold")
    table.add_column("Result")
    for run in runs:
        table.add_row(
            str(run.id),
            run.created_at,
            str(run.seed),
            str(run.trials),
            run.input_name or "",
            "[green]pass[/green]" if run.ok else "[red]FAIL[/red]",
        )
    console.print(table)


@runs_app.command("show")
def runs_show(run_id: int = typer.Argument(..., help="ID of the run")) -> None:
    """Print the stored report of a verification run."""

    run = Storage().get_run(run_id)
    if run is None:
        _fail(f"No verification run with id {run_id}", 1)
    _emit(run.report_data())


@config_app.command("list")
def config_list() -> None:
    """List current configuration values."""

    service = ConfigService()
    table = Table(show_header=True, header_style="bold")
    table.add_column("Key")
    table.add_column("Value")
    for key, value in sorted(service.list().items()):
        table.add_row(key, value)
    console.print(table)


@config_app.command("get")
def config_get(key: str = typer.Argument(..., help="Configuration key")) -> None:
    """Retrieve a configuration value."""

    try:
        value = ConfigService().get(key)
    except ValueError as exc:
        _fail(exc, 1)
    console.print(f"{key} = {value}")


@config_app.command("set")
def config_set(
    key: str = typer.Argument(..., help="Configuration key to set"),
    value: str = typer.Argument(..., help="New integer value"),
) -> None:
    """Update a configuration value."""

    try:
        ConfigService().set(key, value)
    except ValueError as exc:
        _fail(exc, 1)
    console.print(f"Updated {key} = {value}")


def main() -> None:  # pragma: no cover
    app()


if __name__ == "__main__":  # pragma: no cover
    main()
