"""CLI module for parley."""

__all__ = []
