"""Ideals of reducibility, stable lattices and Kubota-Leopoldt series over Z_p[[T]]."""

__version__ = "0.1.0"
