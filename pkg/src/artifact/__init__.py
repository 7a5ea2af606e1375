"""Exact mass formulas and component counts for unitary Shimura varieties over Q."""

__version__ = "0.1.0"
