"""Combinatorics of stable graphs and FS^op modules."""

__version__ = "0.1.0"
