"""The symbolic identity suite."""

from pathlib import Path
from typing import List, Optional

import typer
from rich.table import Table

from src.cli.common import EXIT_FAILURE, console, emit, handle_errors
from src.core.config import RunConfig
from src.core.constants import DISCREPANCY_WHITELIST
from src.operators.diffop import Chart
from src.qes.representation import particular_integral_check
from src.validation import IdentityVerifier, Status, VerificationReport

_STATUS_STYLE = {
    Status.EXACT_PASS: "green",
    Status.PASS_WITH_DISCREPANCIES: "yellow",
    Status.EXACT_FAIL: "red",
}


def is_clean(reports: List[VerificationReport]) -> bool:
    """Every identity passes exactly or with a whitelisted discrepancy."""
    for report in reports:
        if report.status is Status.EXACT_FAIL:
            return False
        if report.status is Status.PASS_WITH_DISCREPANCIES and report.identity not in DISCREPANCY_WHITELIST:
            return False
    return True


@handle_errors
def verify(
    identity: Optional[List[str]] = typer.Option(None, "--identity", "-i", help="Run only these identities"),
    particular: int = typer.Option(-1, "--particular", help="Also check particular integrals for n = 0..N"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="Write JSON here instead of stdout"),
):
    """Run the exact identity suite."""
    config = RunConfig(command="verify", output=output)
    verifier = IdentityVerifier()
    reports = verifier.verify_all(identity or None)
    for chart in (Chart.XY, Chart.UV):
        reports.extend(particular_integral_check(n, chart) for n in range(particular + 1))

    table = Table(title="Identity suite", show_header=True, header_style="bold magenta")
    table.add_column("Identity", style="cyan")
    table.add_column("Status")
    table.add_column("Residual terms", justify="right")
    for report in reports:
        style = _STATUS_STYLE[report.status]
        table.add_row(report.identity, f"[{style}]{report.status.value}[/{style}]", str(len(report.residual_terms)))
    console.print(table)

    clean = is_clean(reports)
    summary = {status.value: sum(1 for r in reports if r.status is status) for status in Status}
    emit("verify", {"reports": [r.to_dict() for r in reports], "summary": summary, "clean": clean}, config, output)
    if not clean:
        raise typer.Exit(EXIT_FAILURE)
