"""Certified arithmetic for counting lattices by covolume."""

__version__ = "0.1.0"
