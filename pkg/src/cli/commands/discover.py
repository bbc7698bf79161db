"""Commutant searches."""

from enum import Enum
from pathlib import Path
from typing import Optional

import typer
from rich.table import Table

from src.cli.common import bindings_from, console, emit, handle_errors
from src.core.config import RunConfig, get_settings
from src.core.exceptions import ConfigError
from src.discovery import AnsatzSpec, commutant_solve, find_km, membership_sweep
from src.discovery.commutant import a2_ansatz
from src.models import a2, g2
from src.operators.diffop import Chart


class Mode(str, Enum):
    COMMUTANT = "commutant"
    MEMBERSHIP = "membership"
    KM = "km"


@handle_errors
def discover(
    mode: Mode = typer.Option(Mode.COMMUTANT, "--mode", help="commutant, membership or km"),
    model: str = typer.Option("a2", "--model", "-m", help="Hamiltonian for the commutant mode: a2 or g2"),
    order: Optional[int] = typer.Option(None, "--order", help="Ansatz order (commutant mode)"),
    degree: Optional[int] = typer.Option(None, "--degree", help="Uniform coefficient degree bound"),
    tau: Optional[str] = typer.Option(None, "--tau"),
    mu: Optional[str] = typer.Option(None, "--mu"),
    nu: Optional[str] = typer.Option(None, "--nu"),
    lam: Optional[str] = typer.Option(None, "--lam"),
    count: int = typer.Option(5, "--count", help="Random bindings in the membership mode"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write JSON here instead of stdout"),
):
    """Search for operators commuting with a Hamiltonian."""
    config = RunConfig(
        command="discover", model=model.lower(),
        bindings=bindings_from(tau=tau, mu=mu, nu=nu, lam=lam),
        seed=get_settings().default_seed if seed is None else seed,
        output=output,
    )
    bindings = config.rational_bindings()

    if mode is Mode.MEMBERSHIP:
        rows = membership_sweep(count, config.seed)
        table = Table(title="k rediscovery", show_header=True, header_style="bold magenta")
        for column in ("bindings", "nullspace", "nontrivial", "contains k"):
            table.add_column(column)
        for row in rows:
            table.add_row(str(row["bindings"]), str(row["nullspace_dim"]), str(row["nontrivial_dim"]),
                          str(row["contains_k"]))
        console.print(table)
        result = {"mode": mode.value, "count": count, "membership_checks": rows}

    elif mode is Mode.KM:
        missing = sorted({"tau", "mu", "nu", "lam"} - set(bindings))
        if missing:
            raise ConfigError(f"the k_m search needs rational {', '.join(missing)}")
        report = find_km(bindings["lam"], bindings["nu"], bindings["tau"], bindings["mu"], degree_bound=degree)
        console.print(f"[bold cyan]k_m search[/bold cyan] solvable={report.solvable} "
                      f"residual={report.residual:.3e} unknowns={report.spec.unknown_count()}")
        result = {"mode": mode.value, **report.to_dict()}

    else:
        required = {"tau", "mu", "nu"} | ({"lam"} if config.model == "g2" else set())
        missing = sorted(required - set(bindings))
        if missing:
            raise ConfigError(f"the commutant search needs rational {', '.join(missing)}")
        if config.model == "a2":
            h, chart = a2.h_xy(), Chart.XY
        else:
            h, chart = g2.h_g2(), Chart.UV
        if order is None and degree is None and config.model == "a2":
            spec = a2_ansatz(bindings)
        else:
            spec = AnsatzSpec.uniform(chart, 3 if order is None else order, 4 if degree is None else degree, bindings)
        basis = commutant_solve(h, spec)
        console.print(f"[bold cyan]Commutant[/bold cyan] dim={basis.nullspace_dim} "
                      f"trivial={basis.trivial_dim} nontrivial={basis.nontrivial_dim}")
        result = {"mode": mode.value, **basis.to_dict()}
        if config.model == "a2":
            result["membership_checks"] = {"h": basis.contains(a2.h_xy()), "k": basis.contains(a2.k_xy())}

    emit("discover", result, config, output)
