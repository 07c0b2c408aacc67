"""Combinatorial model of the Ext algebra of Weyl modules for GL2 in positive characteristic."""

__version__ = "0.1.0"
