"""CLI-side result models."""

__all__ = []
