"""filterlab: monoid-graded filters and layerings on finite p-groups."""

__version__ = "0.1.0"
