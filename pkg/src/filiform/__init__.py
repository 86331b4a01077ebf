"""Exact computations with filiform nilpotent Lie algebras."""

from .liecore import StructureTable, check_jacobi, is_filiform

__all__ = ["StructureTable", "check_jacobi", "is_filiform"]
__version__ = "0.1.0"
