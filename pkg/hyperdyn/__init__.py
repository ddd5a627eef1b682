"""Dynamics induced on symmetric products and symmetric-product suspensions."""

__version__ = "2026.10.17"
