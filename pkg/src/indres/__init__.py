"""Exact tools for induced-character lattices and block correspondences.

Everything is integer or cyclotomic arithmetic; no floats are used anywhere
in a result path.
"""

__version__ = "0.1.0"
