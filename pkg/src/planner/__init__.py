# === File: src/planner/__init__.py ===

"""
Plot Planner Package
"""

__version__ = "1.0.0"
