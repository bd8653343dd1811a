"""Two-sided Eulerian polynomials: exact generation, gamma expansions and
exhaustive identity checks."""

__version__ = "0.1.0"
