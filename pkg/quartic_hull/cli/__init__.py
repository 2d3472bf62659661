"""Command-line surface."""

from quartic_hull.cli.app import build_parser, main

__all__ = ["build_parser", "main"]
