"""Shared plumbing for the commands: logging, error mapping and output."""

import functools
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Optional

import structlog
import typer
from pydantic import ValidationError
from rich.console import Console

from src.core.config import RunConfig
from src.core.exceptions import ConfigError, NonConvergenceError, QESError
from src.export import ReportExporter

# Human-readable output goes to stderr; stdout is reserved for JSON
console = Console(stderr=True)

EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NONCONVERGENCE = 3


def _stderr_logger(*args: Any) -> structlog.PrintLogger:
    # sys.stderr is looked up per logger; a stream captured at configure time may be closed later
    return structlog.PrintLogger(file=sys.stderr)


def configure_logging(verbose: bool = False, quiet: bool = False) -> None:
    level = logging.DEBUG if verbose else logging.ERROR if quiet else logging.INFO
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )


def handle_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """Map engine exceptions to the documented exit codes."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except (ConfigError, ValidationError) as e:
            console.print(f"[red]Configuration error:[/red] {e}")
            raise typer.Exit(EXIT_CONFIG)
        except NonConvergenceError as e:
            console.print(f"[red]Numerics did not converge:[/red] {e}")
            raise typer.Exit(EXIT_NONCONVERGENCE)
        except QESError as e:
            console.print(f"[red]Error:[/red] {e}")
            raise typer.Exit(EXIT_FAILURE)
        except KeyboardInterrupt:
            console.print("\n[yellow]Interrupted by user[/yellow]")
            raise typer.Exit(0)

    return wrapper


def bindings_from(**values: Optional[str]) -> Dict[str, str]:
    """Drop unset options; validation happens in RunConfig."""
    return {name: value for name, value in values.items() if value is not None}


def run_block(config: RunConfig) -> Dict[str, Any]:
    """The run configuration as echoed into the output document."""
    block = config.model_dump(mode="json", exclude={"output"})
    block["bindings"] = {k: str(v) for k, v in config.rational_bindings().items()}
    return block


def emit(command: str, result: Dict[str, Any], config: RunConfig, output: Optional[Path] = None) -> None:
    exporter = ReportExporter()
    exporter.write(exporter.document(command, result, run_block(config)), output)


