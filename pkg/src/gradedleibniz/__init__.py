"""Exact structure-constant toolkit for graded 2-filiform Leibniz algebras."""

__version__ = "0.1.0"
