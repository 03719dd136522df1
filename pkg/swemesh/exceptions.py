"""Errors raised by the solver.

All of them derive from ``ValueError`` so that callers catching the
built-in exception for bad input also catch the domain-specific ones.
The command-line interface maps each of them to its own exit code.

"""
from typing import Optional, Tuple

Index = Optional[Tuple[int, ...]]


class PositivityError(ValueError):
    """Raised when a water depth falls below the positivity threshold.

    Parameters
    ----------
    message: str
        Human-readable description.
    node: tuple of int, optional
        Grid index of the offending node, if known.
    value: float, optional
        The offending depth.
    time: float, optional
        Simulation time at which the violation was detected.

    """
    exit_code = 2

    def __init__(self, message: str,
                 node: Index = None,
                 value: Optional[float] = None,
                 time: Optional[float] = None) -> None:
        super().__init__(message)
        self.node = node
        self.value = value
        self.time = time


class DegenerateMetricError(ValueError):
    """Raised when a metric column vanishes so no normal direction exists."""
    exit_code = 2


class MeshTanglingError(ValueError):
    """Raised when a mesh move produces a non-positive Jacobian.

    Parameters
    ----------
    message: str
        Human-readable description.
    node: tuple of int, optional
        Grid index of the first node with non-positive Jacobian.
    value: float, optional
        The Jacobian found there.

    """
    exit_code = 3

    def __init__(self, message: str,
                 node: Index = None,
                 value: Optional[float] = None) -> None:
        super().__init__(message)
        self.node = node
        self.value = value


class ConfigError(ValueError):
    """Raised for unknown selectors or inconsistent problem settings."""
    exit_code = 4


class HaloError(ValueError):
    """Raised when a padded field is too narrow for the requested stencil."""
    exit_code = 4
