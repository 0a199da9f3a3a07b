"""Adapters between the CLI and the experiment engine."""

__all__ = []
