# === File: src/oracle/__init__.py ===

"""
Numeric Oracle Package

Brute-force floating point checks used to cross-validate the exact analysis.
"""

__version__ = "1.0.0"
