"""
Session state, exit codes and output helpers shared by the command modules.
"""

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any, Iterable, Optional

import typer
from pydantic import BaseModel
from tabulate import tabulate

from app.config import Settings
from app.schemas.base import ErrorDocument, ResultDocument
from app.schemas.results import CheckSchema
from app.schemas.run import RunConfig
from graph_entropy.processing.serialization import format_length, load_file

InputFile = Annotated[
    Path,
    typer.Argument(exists=True, dir_okay=False, readable=True, help="YAML input document."),
]


class ExitCode(IntEnum):
    OK = 0
    VALIDATION = 1
    NUMERICAL = 2
    USAGE = 3


@dataclass
class Session:
    """Handed to every command as ``ctx.obj``."""

    settings: Settings
    run: Optional[RunConfig] = None

    def start(self, command: str, path: Optional[Path] = None) -> RunConfig:
        self.run = (self.run or RunConfig()).model_copy(update={"command": command, "input": path})
        return self.run


def session(ctx: typer.Context) -> Session:
    return ctx.find_object(Session)


def read_document(path: Path) -> Any:
    return load_file(str(path))


def exact(value: Fraction) -> str:
    return format_length(Fraction(value))


def plain(value: Any) -> Any:
    """JSON-friendly copy of a check witness."""
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [plain(v) for v in value]
    return str(value)


def checks(items: Iterable[Any]) -> list[CheckSchema]:
    return [CheckSchema(name=c.name, passed=c.passed, witness=plain(c.witness)) for c in items]


def _cell(value: Any) -> Any:
    if isinstance(value, list):
        return " ".join(str(v) for v in value)
    if isinstance(value, dict):
        return ", ".join(f"{k}={v}" for k, v in value.items())
    return value


def _table(key: str, value: Any) -> Optional[str]:
    if isinstance(value, dict) and value:
        rows = [(k, _cell(v)) for k, v in value.items()]
        return tabulate(rows, headers=[key, ""], floatfmt=".12g")
    if isinstance(value, list) and value:
        if all(isinstance(v, dict) for v in value):
            rows = [{k: _cell(v) for k, v in item.items()} for item in value]
            return tabulate(rows, headers="keys", floatfmt=".12g")
        return tabulate([[v] for v in value], headers=[key])
    return None


def render(payload: BaseModel) -> str:
    """Plain-text tables: scalars first, then one table per mapping or list."""
    data = payload.model_dump(mode="json")
    scalars = [(k, v) for k, v in data.items() if not isinstance(v, (dict, list))]
    blocks = [tabulate(scalars, tablefmt="plain", floatfmt=".12g")] if scalars else []
    for key, value in data.items():
        block = _table(key, value)
        if block:
            blocks.append(block)
    return "\n\n".join(blocks)


def emit(ctx: typer.Context, payload: BaseModel, text: Optional[str] = None) -> None:
    """Write the command result in the configured format."""
    state = session(ctx)
    if state.run.structured:
        document = ResultDocument(
            schema_version=state.settings.SCHEMA_VERSION,
            command=state.run.command,
            data=payload,
        )
        typer.echo(document.model_dump_json(indent=2))
    else:
        typer.echo(text if text is not None else render(payload))


def fail(state: Session, code: ExitCode, message: str) -> int:
    """Report an error and return its exit code."""
    if state.run is not None and state.run.structured:
        document = ErrorDocument(
            schema_version=state.settings.SCHEMA_VERSION,
            command=state.run.command,
            message=message,
            exit_code=int(code),
        )
        typer.echo(document.model_dump_json(indent=2))
    else:
        typer.echo(f"error: {message}", err=True)
    return int(code)
