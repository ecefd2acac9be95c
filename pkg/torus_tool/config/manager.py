"""Configuration manager for the mapping-torus tool."""

import copy
import os
import shutil
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

logger = logging.getLogger(__name__)

CONFIG_FILENAME = "torus_tool.yaml"
HOME_CONFIG_FILENAME = ".torus_tool_config.yaml"
OUTPUT_FORMATS = ('text', 'structured')

DEFAULTS: Dict[str, Any] = {
    'scan': {'max_len': 4, 'max_power': 4, 'max_workers': 4},
    'splitex': {'k_max': 4, 'v_max': 3},
    'output': {'format': 'text'},
    'synthesis': {'seed': 0},
    'logging': {
        'level': 'WARNING',
        'file': '',
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    },
}

_POSITIVE_KEYS = ('scan.max_len', 'scan.max_power', 'scan.max_workers', 'splitex.k_max')


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class ConfigManager:
    """Loads configuration, layered over built-in defaults."""

    def __init__(self, config_path: Optional[str] = None):
        """Initialize configuration manager.

        Args:
            config_path: Path to configuration file. If None, searches for
                        torus_tool.yaml in the current directory, then the
                        user home directory; defaults apply when neither exists.
        """
        self.config_path = self._find_config_path(config_path)
        self.config = self._load_config()

    def _find_config_path(self, config_path: Optional[str]) -> Optional[str]:
        """Find configuration file path."""
        if config_path:
            if os.path.exists(config_path):
                return config_path
            raise FileNotFoundError(
                f"Specified configuration file not found: {config_path}\n"
                f"Please check the path and try again."
            )

        current_dir_config = os.path.join(os.getcwd(), CONFIG_FILENAME)
        if os.path.exists(current_dir_config):
            return current_dir_config

        home_config = os.path.join(Path.home(), HOME_CONFIG_FILENAME)
        if os.path.exists(home_config):
            return home_config

        return None

    def _load_config(self) -> Dict[str, Any]:
        """Load configuration from YAML file."""
        if self.config_path is None:
            logger.debug("No configuration file found, using defaults")
            return copy.deepcopy(DEFAULTS)
        try:
            with open(self.config_path, 'r', encoding='utf-8') as f:
                loaded = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ValueError(f"Invalid YAML in config file {self.config_path}: {e}")

        if not isinstance(loaded, dict):
            raise ValueError(f"Config file {self.config_path} must contain a mapping")
        config = _merge(DEFAULTS, loaded)
        self._validate_config(config)
        logger.debug(f"Loaded configuration from {self.config_path}")
        return config

    @staticmethod
    def _validate_config(config: Dict[str, Any]) -> None:
        """Validate bounds and the output format."""
        for key in _POSITIVE_KEYS:
            section, name = key.split('.')
            value = config[section][name]
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"Configuration value {key} must be a positive integer, got {value!r}")
        v_max = config['splitex']['v_max']
        if not isinstance(v_max, int) or v_max < 0:
            raise ValueError(f"Configuration value splitex.v_max must be a non-negative integer, got {v_max!r}")
        if config['output']['format'] not in OUTPUT_FORMATS:
            raise ValueError(f"Unknown output format {config['output']['format']!r} "
                             f"(choose from {', '.join(OUTPUT_FORMATS)})")

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value using dot notation.

        Args:
            key: Configuration key in dot notation (e.g., 'scan.max_len')
            default: Default value if key is not found

        Returns:
            Configuration value or default
        """
        value = self.config
        try:
            for k in key.split('.'):
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def get_scan_config(self) -> Dict[str, Any]:
        return self.config['scan']

    def get_splitex_config(self) -> Dict[str, Any]:
        return self.config['splitex']

    def get_output_config(self) -> Dict[str, Any]:
        return self.config['output']

    def get_synthesis_config(self) -> Dict[str, Any]:
        return self.config['synthesis']

    def get_logging_config(self) -> Dict[str, Any]:
        return self.config.get('logging', {})

    @staticmethod
    def create_sample_config(path: str) -> None:
        """Create a sample configuration file.

        Args:
            path: Path where to create the sample config file
        """
        sample = Path(__file__).resolve().parent.parent / 'data' / CONFIG_FILENAME
        if not sample.exists():
            raise FileNotFoundError("Sample configuration file not found in package")
        shutil.copy2(sample, path)
        logger.info(f"Sample configuration created at: {path}")


@dataclass
class RunConfig:
    """Resolved settings for one command: CLI flags layered over the config file."""

    command: str
    inputs: List[Path] = field(default_factory=list)
    max_len: int = DEFAULTS['scan']['max_len']
    max_power: int = DEFAULTS['scan']['max_power']
    k_max: int = DEFAULTS['splitex']['k_max']
    v_max: int = DEFAULTS['splitex']['v_max']
    workers: int = DEFAULTS['scan']['max_workers']
    output_format: str = 'text'
    seed: int = 0

    @classmethod
    def build(cls, command: str, manager: ConfigManager, inputs=(), **overrides) -> 'RunConfig':
        scan = manager.get_scan_config()
        splitex = manager.get_splitex_config()
        settings = {
            'max_len': scan['max_len'],
            'max_power': scan['max_power'],
            'workers': scan['max_workers'],
            'k_max': splitex['k_max'],
            'v_max': splitex['v_max'],
            'output_format': manager.get_output_config()['format'],
            'seed': manager.get_synthesis_config()['seed'],
        }
        settings.update({key: value for key, value in overrides.items() if value is not None})
        run = cls(command, [Path(p) for p in inputs], **settings)
        run.validate()
        return run

    def validate(self) -> None:
        for name in ('max_power', 'k_max', 'workers'):
            if getattr(self, name) < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be positive, got {getattr(self, name)}")
        for name in ('max_len', 'v_max'):
            if getattr(self, name) < 0:
                raise ValueError(f"--{name.replace('_', '-')} must be non-negative, got {getattr(self, name)}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"Unknown output format {self.output_format!r}")
        for path in self.inputs:
            if not path.exists():
                raise FileNotFoundError(f"Input file not found: {path}")
