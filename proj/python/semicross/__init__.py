"""Compactness certificates for semicrossed-product multiplication operators."""

from ._semicross import DynSysError, ParseError, Workspace

__all__ = ["Workspace", "ParseError", "DynSysError"]
