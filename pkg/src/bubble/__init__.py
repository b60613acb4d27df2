"""Exact arithmetic and representation theory for multi-colour bubble algebras."""

__version__ = "0.1.0"
