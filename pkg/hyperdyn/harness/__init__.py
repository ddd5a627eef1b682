"""Theorem table, system catalog, suite runner, reports and the command line."""
