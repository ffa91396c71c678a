"""Local-global number theory toolkit: p-adic numbers, Hilbert symbols and
ternary quadratic forms, integer linear systems, and elliptic curves over Q."""

from .errors import LocalGlobalError
from .padic import PAdicNumber, hensel_lift, padic_log, teichmuller
from .places import INF, Place

__version__ = "0.1.0"

__all__ = ["LocalGlobalError", "PAdicNumber", "hensel_lift", "padic_log", "teichmuller", "INF", "Place"]
