"""Compound vectors of subordinators, alpha-Clayton Levy copulas, simulation and likelihood inference."""

from compound_levy.errors import ConvergenceError, DomainError

__version__ = "0.1.0"

__all__ = ["ConvergenceError", "DomainError", "__version__"]
