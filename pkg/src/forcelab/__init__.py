"""forcelab: finite forcing combinatorics with a property-check harness."""

__version__ = "0.1.0"
