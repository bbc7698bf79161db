"""Spectra and eigenfunctions of the algebraic sector."""

from pathlib import Path
from typing import Optional

import typer
from rich.table import Table

from src.cli.common import bindings_from, console, emit, handle_errors
from src.core.config import RunConfig
from src.spectral.sector import eigenfunctions as sector_eigenfunctions
from src.spectral.sector import spectrum as sector_spectrum

MODEL_OPTION = typer.Option("a2", "--model", "-m", help="a2 or g2")
N_OPTION = typer.Option(2, "--n", help="Sector index; nu = -n/3")
TAU_OPTION = typer.Option(None, "--tau", help="Rational value of tau; symbolic when omitted")
MU_OPTION = typer.Option(None, "--mu", help="Rational value of mu; symbolic when omitted")
LAM_OPTION = typer.Option(None, "--lam", help="Rational value of lambda (G2 only)")
OUTPUT_OPTION = typer.Option(None, "--output", "-o", help="Write JSON here instead of stdout")


@handle_errors
def spectrum(
    model: str = MODEL_OPTION,
    n: int = N_OPTION,
    tau: Optional[str] = TAU_OPTION,
    mu: Optional[str] = MU_OPTION,
    lam: Optional[str] = LAM_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
):
    """Characteristic polynomial of the sector and its roots."""
    config = RunConfig(command="spectrum", model=model.lower(), n=n,
                       bindings=bindings_from(tau=tau, mu=mu, lam=lam), output=output)
    report = sector_spectrum(config.model, config.n, config.rational_bindings())

    console.print(f"[bold cyan]{config.model.upper()} sector n={config.n}[/bold cyan] "
                  f"degree {report.poly.degree}")
    if report.roots is not None:
        table = Table(title="Eigenvalues", show_header=True, header_style="bold magenta")
        table.add_column("Exact", style="cyan")
        table.add_column("Value", justify="right")
        table.add_column("Multiplicity", justify="right")
        for root in report.roots:
            table.add_row(str(root.exact) if root.exact is not None else "-",
                          f"{root.value.real:.12g}{root.value.imag:+.12g}j", str(root.multiplicity))
        console.print(table)
    else:
        console.print("[yellow]Parameters left symbolic; roots not computed[/yellow]")
    emit("spectrum", report.to_dict(), config, output)


@handle_errors
def eigenfunctions(
    model: str = MODEL_OPTION,
    n: int = N_OPTION,
    tau: Optional[str] = TAU_OPTION,
    mu: Optional[str] = MU_OPTION,
    lam: Optional[str] = LAM_OPTION,
    output: Optional[Path] = OUTPUT_OPTION,
):
    """Eigenfunctions of the sector with their gauge factors."""
    config = RunConfig(command="eigenfunctions", model=model.lower(), n=n,
                       bindings=bindings_from(tau=tau, mu=mu, lam=lam), output=output)
    report = sector_eigenfunctions(config.model, config.n, config.rational_bindings())

    table = Table(title="Eigenfunctions", show_header=True, header_style="bold magenta")
    table.add_column("Energy", style="cyan")
    table.add_column("Polynomial")
    for descriptor in report.descriptors:
        table.add_row(descriptor.energy or "-", descriptor.polynomial)
    console.print(table)
    emit("eigenfunctions", report.to_dict(), config, output)
