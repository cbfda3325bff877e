"""pidlab: a discrete partial information decomposition workbench."""

__version__ = "0.1.0"
