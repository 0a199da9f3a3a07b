"""Utility functions and helpers for CLI."""

__all__ = []
