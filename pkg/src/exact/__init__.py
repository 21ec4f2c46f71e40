# === File: src/exact/__init__.py ===

"""
Exact Arithmetic Package

Polynomials over Q[t, s, k, p] with p standing for pi, rational interval
arithmetic, pi enclosures and certified real root isolation.
"""

__version__ = "1.0.0"
