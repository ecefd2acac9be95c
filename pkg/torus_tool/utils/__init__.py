"""Utility modules for the mapping-torus tool."""

from .helpers import DATA_DIR, fresh_name, print_colored, resolve_input, setup_logging

__all__ = ['DATA_DIR', 'fresh_name', 'print_colored', 'resolve_input', 'setup_logging']
