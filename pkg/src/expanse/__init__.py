"""Expansion functor on monomial ideals, configurations and discrete polymatroids."""

__version__ = "0.1.0"
