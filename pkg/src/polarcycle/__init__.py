"""Symbolic local intersection theory for polynomial hypersurface germs."""

__version__ = "0.1.0"
