# === File: src/__init__.py ===

"""
Polares - Source Package

Exact symbolic-numeric analysis and plotting of rational polar curves
phi(t) = (r(t), theta(t)).
"""

__version__ = "1.0.0"
