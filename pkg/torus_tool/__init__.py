"""Mapping-torus splitting tool package."""

__version__ = "0.3.0"
__author__ = "Torus Tools"
