"""
Shared pytest fixtures for the command-line tests.

Graph documents are written to tmp_path and the CLI is driven through
``app.main.run`` so exit statuses are observed without leaving the process.
"""

import json

import pytest
import yaml
from loguru import logger

from app.main import run


THETA = {
    "vertices": ["a", "b"],
    "edges": [{"id": f"e{i}", "u": "a", "v": "b", "length": 1} for i in (1, 2, 3)],
}

K4 = {
    "vertices": ["a", "b", "c", "d"],
    "edges": [{"id": u + v, "u": u, "v": v, "length": 1} for u, v in ("ab", "ac", "ad", "bc", "bd", "cd")],
}

CYCLE4 = {
    "vertices": ["a", "b", "c", "d"],
    "edges": [{"id": u + v, "u": u, "v": v, "length": 1} for u, v in ("ab", "bc", "cd", "da")],
}


@pytest.fixture(autouse=True)
def testing_environment(monkeypatch):
    """Run every CLI call with TestingSettings."""
    monkeypatch.setenv("ENVIRONMENT", "testing")
    yield
    logger.remove()
    logger.disable("graph_entropy")


@pytest.fixture
def write_document(tmp_path):
    """Write a mapping as YAML and return its path as a string."""

    def write(document, name="graph.yml"):
        path = tmp_path / name
        path.write_text(yaml.safe_dump(document, sort_keys=False))
        return str(path)

    return write


@pytest.fixture
def cli(capsys):
    """Run the CLI; returns (exit status, stdout, stderr)."""

    def invoke(*args):
        status = run([str(a) for a in args])
        captured = capsys.readouterr()
        return status, captured.out, captured.err

    return invoke


@pytest.fixture
def structured(cli):
    """Run with --format structured; returns (exit status, parsed document)."""

    def invoke(*args):
        status, out, _ = cli("--format", "structured", *args)
        return status, json.loads(out)

    return invoke
