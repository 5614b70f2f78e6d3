"""Symplectic pairings, splittings and twist flows on SL3 character varieties of cone 2-orbifolds."""

from orbisymp.version import __version__

__all__ = ["__version__"]
