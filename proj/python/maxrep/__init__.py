"""Maximal representations of surface groups into Sp(2n, R)."""

from ._maxrep import *  # noqa: F401,F403
from ._maxrep import MaxrepError, Tolerance

__all__ = [name for name in dir() if not name.startswith("_")]
