# === File: src/curves/__init__.py ===

"""
Curves Package

Rational functions of t, the input expression grammar and validated polar curves.
"""

__version__ = "1.0.0"
