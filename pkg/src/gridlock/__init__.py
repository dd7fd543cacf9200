"""Graph-restricted cooperative games under minimum-weight partitions."""

__version__ = "0.1.0"
