"""Recognition of 4-Steiner powers and 6-leaf powers with explicit witness trees."""

__version__ = "0.1.0"
