"""Exact skein-module arithmetic at roots of unity.

Integral bases for surface skein pairings, Gram determinant certificates,
lattice stabilization under the modular action, and Kauffman bracket
divisibility checks, all in exact integer/cyclotomic arithmetic.
"""

__version__ = "0.1.0"
