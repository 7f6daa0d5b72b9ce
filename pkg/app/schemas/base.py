"""Base result schemas: the standard envelope for every command."""

from datetime import datetime, timezone
from typing import Any, Optional

from pydantic import BaseModel, Field


class ResultDocument(BaseModel):
    """Standard structured output envelope."""

    schema_version: str
    command: Optional[str] = None
    status: str = "ok"
    data: Any
    timestamp: str = Field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat()
    )


class ErrorDocument(BaseModel):
    """Standard structured error output."""

    schema_version: str
    command: Optional[str] = None
    status: str = "error"
    data: None = None
    message: str
    exit_code: int
    timestamp: str = Field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat()
    )
