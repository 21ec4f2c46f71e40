# === File: src/analysis/__init__.py ===

"""
Analysis Package

Limits and extrema of rational functions, self-intersection theory,
feature detection, and the analyzer that assembles a full report.
"""

__version__ = "1.0.0"
