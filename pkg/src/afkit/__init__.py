"""afkit: a workbench for the adjacent fragment of first-order logic."""

__version__ = "0.1.0"
