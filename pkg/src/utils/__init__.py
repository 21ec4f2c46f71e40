# === File: src/utils/__init__.py ===

"""
Utilities Package
"""
