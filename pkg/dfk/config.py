"""Configuration management for dfk."""
import logging
import os
from typing import Dict, Any, Optional
from dotenv import load_dotenv

from .errors import ConfigError

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)


class Config:
    """Configuration class for dfk."""

    def __init__(self, config_dict: Optional[Dict[str, Any]] = None):
        """
        Initialize configuration.

        Args:
            config_dict: Optional dictionary with configuration values
        """
        self.config = dict(config_dict or {})
        self._load_from_env()

    def _load_from_env(self):
        """Load configuration from environment variables."""
        env_mappings = {
            'DFK_MAX_BOUND': 'max_bound',
            'DFK_SEED': 'seed',
            'DFK_NO_TIMESTAMP': 'no_timestamp',
        }

        for env_key, config_key in env_mappings.items():
            value = os.getenv(env_key)
            if value and config_key not in self.config:
                if config_key in ('max_bound', 'seed'):
                    try:
                        value = int(value)
                    except ValueError:
                        raise ConfigError(
                            f"{env_key} needs an integer, got {value!r}", env_key, value) from None
                elif config_key == 'no_timestamp':
                    value = value.strip().lower() in ('1', 'true', 'yes')
                self.config[config_key] = value

        if self.config.get('max_bound') is not None:
            logger.info("hard caps raised to %s via DFK_MAX_BOUND", self.config['max_bound'])

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value."""
        return self.config.get(key, default)

    def limit(self, name: str) -> int:
        """Hard cap for `name`, raised by max_bound when one is configured."""
        cap = HARD_LIMITS[name]
        raised = self.config.get('max_bound')
        if raised is not None:
            return max(cap, int(raised))
        return cap


# Default caps for the exhaustive sweeps and the blow-up constructions
HARD_LIMITS = {
    'poset_elements': 5,
    'frame_tokens': 3,
    'con_size': 4,
    'universe': 3,
    'family': 3,
    'exhaustive_universe': 8,
}


def default_config() -> Config:
    """A fresh Config reading the current environment."""
    return Config()
