"""Computational checks built on the graph core and solvers."""
