"""
Configuration manager for the verification suite
Loads size guards, default identity bounds and runtime switches
"""

import configparser
import logging
import os
from functools import lru_cache
from pathlib import Path
from typing import Dict, Any

logging.basicConfig(level=logging.INFO, format='%(levelname)s %(name)s: %(message)s')
logger = logging.getLogger(__name__)

DEFAULT_CONFIG_FILE = Path(__file__).resolve().parent.parent / 'config_verification.ini'
MAX_N_ENV = 'GDLATTICE_MAX_N'

DEFAULT_BOUNDS = {
    'ballot': 12,
    'main': 7,
    'stirling': 7,
    'riordan': 9,
    'matchings': 7,
    'bijections': 6,
    'statistics': 6,
    'rank-path': 5,
    'rank-perm': 5,
    'lattice': 5,
    'spectrum': 5,
    'young': 4,
    'birkhoff': 4,
    'maxvec': 5,
    'bruhat': 4,
    'corollary': 4,
    'oracle': 4,
    'eco': 7,
}


class ResourceGuardError(ValueError):
    """Raised when a requested size exceeds a configured guard"""


class VerificationConfig:
    """Manages verification configuration from INI file"""

    def __init__(self, config_file: str = str(DEFAULT_CONFIG_FILE)):
        self.config_file = Path(config_file)
        self.config = configparser.ConfigParser()

        if not self.config_file.exists():
            logger.warning(f"Config file not found: {config_file}")
            logger.info("Using built-in defaults")
        else:
            self.config.read(self.config_file)
            logger.debug(f"Loaded config from {config_file}")

    # Limits
    @property
    def max_n(self) -> int:
        """Global size guard; the environment variable wins over the file"""
        override = os.environ.get(MAX_N_ENV)
        if override:
            try:
                return int(override)
            except ValueError:
                logger.warning(f"Ignoring non-integer {MAX_N_ENV}={override!r}")
        return self.config.getint('limits', 'max_n', fallback=7)

    @property
    def max_poset_elements(self) -> int:
        return self.config.getint('limits', 'max_poset_elements', fallback=400)

    @property
    def max_signed_n(self) -> int:
        return self.config.getint('limits', 'max_signed_n', fallback=6)

    @property
    def max_partition_n(self) -> int:
        """Guard for brute-force set-partition enumeration"""
        return self.config.getint('limits', 'max_partition_n', fallback=10)

    # Identity bounds
    def default_bound(self, identity: str) -> int:
        return self.config.getint('bounds', identity, fallback=DEFAULT_BOUNDS.get(identity, 4))

    @property
    def all_bounds(self) -> Dict[str, int]:
        return {name: self.default_bound(name) for name in DEFAULT_BOUNDS}

    # Runtime
    @property
    def parallel(self) -> bool:
        return self.config.getboolean('runtime', 'parallel', fallback=False)

    @property
    def workers(self) -> int:
        return self.config.getint('runtime', 'workers', fallback=4)

    # Output
    @property
    def json_output(self) -> bool:
        return self.config.getboolean('output', 'json', fallback=False)

    @property
    def report_csv(self) -> str:
        return self.config.get('output', 'report_csv', fallback='')

    # Logging
    @property
    def log_level(self) -> str:
        return self.config.get('logging', 'log_level', fallback='INFO')

    def get_all_settings(self) -> Dict[str, Any]:
        """Get all settings as dictionary"""
        return {
            'limits': {
                'max_n': self.max_n,
                'max_poset_elements': self.max_poset_elements,
                'max_signed_n': self.max_signed_n,
                'max_partition_n': self.max_partition_n,
            },
            'bounds': self.all_bounds,
            'runtime': {
                'parallel': self.parallel,
                'workers': self.workers,
            },
            'output': {
                'json': self.json_output,
                'report_csv': self.report_csv,
            },
            'logging': {
                'log_level': self.log_level,
            },
        }

    def print_summary(self):
        """Print configuration summary"""
        bounds = ', '.join(f'{k}={v}' for k, v in self.all_bounds.items())
        print(f"""
════════════════════════════════════════════════════════════════════════════
                    VERIFICATION CONFIGURATION SUMMARY
════════════════════════════════════════════════════════════════════════════

LIMITS
────────────────────────────────────────────────────────────────────────────
Max n (global guard):  {self.max_n}{' (from ' + MAX_N_ENV + ')' if os.environ.get(MAX_N_ENV) else ''}
Max poset elements:    {self.max_poset_elements}
Max signed n:          {self.max_signed_n}
Max partition n:       {self.max_partition_n}

IDENTITY BOUNDS
────────────────────────────────────────────────────────────────────────────
{bounds}

RUNTIME
────────────────────────────────────────────────────────────────────────────
Parallel:              {self.parallel}
Workers:               {self.workers}
JSON output:           {self.json_output}
Report CSV:            {self.report_csv or 'None'}
Log level:             {self.log_level}

════════════════════════════════════════════════════════════════════════════
""")


def load_config(config_file: str = str(DEFAULT_CONFIG_FILE)) -> VerificationConfig:
    """Load verification configuration"""
    return VerificationConfig(config_file)


@lru_cache(maxsize=1)
def get_config() -> VerificationConfig:
    """Process-wide configuration, loaded once"""
    config = load_config()
    logging.getLogger().setLevel(config.log_level.upper())
    return config


def check_size(n: int, limit: int, what: str) -> None:
    """Raise ResourceGuardError when n is above limit"""
    if n > limit:
        raise ResourceGuardError(
            f"{what}: n={n} exceeds the configured bound {limit} "
            f"(raise it in the config file or via {MAX_N_ENV})"
        )


if __name__ == '__main__':
    config = load_config()
    config.print_summary()
