"""Pydantic schemas for run options and result documents."""
