"""Command-line front end for graph_entropy."""

__version__ = "0.1.0"
