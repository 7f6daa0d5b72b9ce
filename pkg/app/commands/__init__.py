"""Command modules, one per command family."""
