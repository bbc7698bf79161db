"""Numeric cross-checks of the elliptic change of variables."""

from pathlib import Path
from typing import Optional

import typer
from rich.table import Table

from src.cli.common import EXIT_FAILURE, console, emit, handle_errors
from src.core.config import LatticeConfig, RunConfig
from src.elliptic import run_checks


@handle_errors
def crosscheck(
    lattice: Path = typer.Option(..., "--lattice", "-l", help="Lattice configuration JSON"),
    samples: Optional[int] = typer.Option(None, "--samples", "-s", help="Override the sample count"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Override the seed"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write JSON here instead of stdout"),
):
    """Evaluate the lattice functions on seeded points and compare with the algebraic forms."""
    config = LatticeConfig.from_file(lattice)
    overrides = {k: v for k, v in {"samples": samples, "seed": seed}.items() if v is not None}
    if overrides:
        config = LatticeConfig.model_validate({**config.model_dump(), **overrides})
    run = RunConfig(command="crosscheck", lattice=lattice, seed=config.seed, output=output)
    reports = run_checks(config)

    table = Table(title="Numeric cross-checks", show_header=True, header_style="bold magenta")
    table.add_column("Check", style="cyan")
    table.add_column("Max error", justify="right")
    table.add_column("Tolerance", justify="right")
    table.add_column("Result")
    for report in reports:
        verdict = "[blue]exploratory[/blue]" if report.exploratory else (
            "[green]pass[/green]" if report.passed else "[red]fail[/red]")
        table.add_row(report.check, f"{report.max_error:.3e}", f"{report.tolerance:.0e}", verdict)
    console.print(table)

    passed = all(r.passed or r.exploratory for r in reports)
    result = {
        "lattice": config.model_dump(mode="json"),
        "checks": [r.to_dict() for r in reports],
        "passed": passed,
    }
    emit("crosscheck", result, run, output)
    if not passed:
        raise typer.Exit(EXIT_FAILURE)
