# === File: src/output/__init__.py ===

"""
Output Package

Curve sampling, the text and JSON reports, SVG and CSV emission.
"""

__version__ = "1.0.0"
