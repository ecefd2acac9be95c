"""Configuration management for the mapping-torus tool."""

from .manager import DEFAULTS, OUTPUT_FORMATS, ConfigManager, RunConfig

__all__ = ['ConfigManager', 'DEFAULTS', 'OUTPUT_FORMATS', 'RunConfig']
