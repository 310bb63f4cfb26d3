"""Exact census of cubic surfaces over small finite fields."""

__version__ = "0.1.0"
