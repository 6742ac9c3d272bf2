"""similemine: semi-automated simile mining for Serbian web text."""

__version__ = "0.1.0"
