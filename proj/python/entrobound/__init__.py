"""Entropy-rate upper bounds for integer-valued stationary processes.

All entropies are in nats.
"""

from ._core import *  # noqa: F401,F403
from ._core import ConvergenceError, DomainError, Table

__version__ = "0.1.0"
