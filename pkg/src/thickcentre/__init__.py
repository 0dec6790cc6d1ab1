"""Thick subcategories, their central elements, and localization sequences
for derived categories of type-A quiver representations over Z/p."""

__version__ = "0.1.0"
