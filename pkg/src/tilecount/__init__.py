"""Polyomino tilings, tile invariants and tile counting groups."""

__version__ = "0.1.0"
