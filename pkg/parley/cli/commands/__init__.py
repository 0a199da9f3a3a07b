"""CLI commands."""

__all__ = []
