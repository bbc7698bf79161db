"""Typer application for the QES engine."""

import sys

import typer
from rich import print
from rich.table import Table

from src import __version__
from src.cli.common import EXIT_FAILURE, configure_logging, console
from src.cli.commands import crosscheck, discover, spectrum, verify
from src.core.config import get_settings
from src.core.constants import CHECK_IDS, DISCREPANCY_WHITELIST, EXPLORATORY_CHECKS, IDENTITY_IDS, SCHEMA_VERSION

app = typer.Typer(
    name="qes-engine",
    help="Exact operator algebra, spectra and elliptic cross-checks for the A2/G2 elliptic Calogero-Moser models",
    add_completion=False,
    rich_markup_mode="rich",
)

app.command(name="verify")(verify.verify)
app.command(name="spectrum")(spectrum.spectrum)
app.command(name="eigenfunctions")(spectrum.eigenfunctions)
app.command(name="crosscheck")(crosscheck.crosscheck)
app.command(name="discover")(discover.discover)


@app.command()
def version():
    """Show version information."""
    print(f"[bold cyan]QES engine[/bold cyan] version [bold green]{__version__}[/bold green] "
          f"(report schema {SCHEMA_VERSION})")


@app.command()
def info():
    """List the identity suite, the numeric checks and the active defaults."""
    identities = Table(title="Identity suite", show_header=True, header_style="bold magenta")
    identities.add_column("Identity", style="cyan")
    identities.add_column("Discrepancy allowed")
    for identity in IDENTITY_IDS:
        identities.add_row(identity, "yes" if identity in DISCREPANCY_WHITELIST else "")
    console.print(identities)

    checks = Table(title="Numeric cross-checks", show_header=True, header_style="bold magenta")
    checks.add_column("Check", style="cyan")
    checks.add_column("Kind")
    for check in CHECK_IDS:
        checks.add_row(check, "exploratory" if check in EXPLORATORY_CHECKS else "gated")
    console.print(checks)

    console.print("\n[bold]Defaults[/bold]")
    for name, value in get_settings().defaults_block().items():
        console.print(f"  • {name}: {value}")


@app.callback()
def callback(
    ctx: typer.Context,
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Enable debug logging"),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="Only log errors"),
):
    """QES engine CLI; logs go to stderr, JSON to stdout or --output."""
    configure_logging(verbose=verbose, quiet=quiet)
    ctx.ensure_object(dict)
    ctx.obj.update(verbose=verbose, quiet=quiet)


def main():
    """Console entry point."""
    try:
        app()
    except KeyboardInterrupt:
        console.print("\n[yellow]Interrupted by user[/yellow]")
        sys.exit(0)
    except Exception as e:
        console.print(f"\n[red]Error: {e}[/red]")
        sys.exit(EXIT_FAILURE)


if __name__ == "__main__":
    main()
