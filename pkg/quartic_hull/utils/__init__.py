"""Utility functions and helpers for Quartic-Hull."""
