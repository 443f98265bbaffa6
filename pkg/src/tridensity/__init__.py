"""Minimal triangle density in weighted tripartite graphs."""

__version__ = "0.1.0"
