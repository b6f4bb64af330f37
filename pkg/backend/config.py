"""
LieVerify Backend - Configuration Module
Verification-wide settings and configuration
"""

import os
import json
import logging


SEED_ENV_VAR = "LIEVERIFY_SEED"


class Config:
    """Verification configuration class"""

    def __init__(self, config_file=None):
        """Initialize configuration with default values"""

        # Model sizes
        self.MIN_N = 3
        self.DEFAULT_MAX_N = 6
        self.SL2_MAX_K = 6
        self.ROOT_SYSTEM_SCAN_BOUND = 30

        # Randomized harnesses
        self.DEFAULT_SEED = int(os.environ.get(SEED_ENV_VAR, "1"))
        self.FALSIFIER_TRIALS = 1000
        self.FALSIFIER_SIZES = [3, 4, 5]
        self.ENGEL_TRIALS = 100
        self.ENGEL_SIZES = [4, 5, 6]
        self.MEATAXE_RETRIES = 20
        self.RANDOM_ENTRY_BOUND = 5

        # Polynomial identity grid (3 points certify per-variable degree 2)
        self.GRID_VALUES = [-1, 0, 1]

        # Application settings
        self.APP_NAME = "LieVerify"
        self.VERSION = "1.0.0"
        self.JOBS = 1
        self.SHOW_PROGRESS = False
        self.REPORT_TIMINGS = False

        # Logging settings
        self.LOG_LEVEL = "INFO"
        self.LOG_FILE = os.path.join(os.path.dirname(os.path.dirname(__file__)), "logs", "verify.log")
        self.MAX_LOG_SIZE = 10 * 1024 * 1024  # 10MB
        self.LOG_BACKUP_COUNT = 5

        # Load config file if provided
        if config_file and os.path.exists(config_file):
            self.load_config(config_file)

        errors = self.validate()
        if errors:
            logging.getLogger(__name__).warning(f"Configuration validation errors: {errors}")

    def load_config(self, config_file):
        """Load configuration from JSON file"""
        try:
            with open(config_file, 'r') as f:
                config_data = json.load(f)

            for key, value in config_data.items():
                if hasattr(self, key):
                    setattr(self, key, value)

        except Exception as e:
            logging.getLogger(__name__).error(f"Error loading configuration: {e}")

    def to_dict(self):
        """Settings that are persisted by save_config"""
        return {
            'MIN_N': self.MIN_N,
            'DEFAULT_MAX_N': self.DEFAULT_MAX_N,
            'SL2_MAX_K': self.SL2_MAX_K,
            'ROOT_SYSTEM_SCAN_BOUND': self.ROOT_SYSTEM_SCAN_BOUND,
            'DEFAULT_SEED': self.DEFAULT_SEED,
            'FALSIFIER_TRIALS': self.FALSIFIER_TRIALS,
            'FALSIFIER_SIZES': list(self.FALSIFIER_SIZES),
            'ENGEL_TRIALS': self.ENGEL_TRIALS,
            'ENGEL_SIZES': list(self.ENGEL_SIZES),
            'MEATAXE_RETRIES': self.MEATAXE_RETRIES,
            'RANDOM_ENTRY_BOUND': self.RANDOM_ENTRY_BOUND,
            'GRID_VALUES': list(self.GRID_VALUES),
            'JOBS': self.JOBS,
            'SHOW_PROGRESS': self.SHOW_PROGRESS,
            'REPORT_TIMINGS': self.REPORT_TIMINGS,
            'LOG_LEVEL': self.LOG_LEVEL,
        }

    def save_config(self, config_file):
        """Save current configuration to JSON file"""
        try:
            directory = os.path.dirname(config_file)
            if directory:
                os.makedirs(directory, exist_ok=True)

            with open(config_file, 'w') as f:
                json.dump(self.to_dict(), f, indent=4)

        except Exception as e:
            logging.getLogger(__name__).error(f"Error saving configuration: {e}")

    def ensure_directories(self):
        """Ensure the log directory exists"""
        os.makedirs(os.path.dirname(self.LOG_FILE), exist_ok=True)

    def validate(self):
        """Validate configuration settings"""
        errors = []

        if self.MIN_N < 3:
            errors.append("MIN_N must be at least 3")

        if self.DEFAULT_MAX_N < self.MIN_N:
            errors.append("DEFAULT_MAX_N must be at least MIN_N")

        if self.FALSIFIER_TRIALS < 0:
            errors.append("FALSIFIER_TRIALS must be non-negative")

        if self.ENGEL_TRIALS < 0:
            errors.append("ENGEL_TRIALS must be non-negative")

        if self.MEATAXE_RETRIES <= 0:
            errors.append("MEATAXE_RETRIES must be positive")

        if len(set(self.GRID_VALUES)) < 3:
            errors.append("GRID_VALUES must contain at least 3 distinct values")

        if self.JOBS <= 0:
            errors.append("JOBS must be positive")

        if self.ROOT_SYSTEM_SCAN_BOUND < 3:
            errors.append("ROOT_SYSTEM_SCAN_BOUND must be at least 3")

        if self.RANDOM_ENTRY_BOUND <= 0:
            errors.append("RANDOM_ENTRY_BOUND must be positive")

        return errors

    def __str__(self):
        """String representation of configuration"""
        return f"Config(seed={self.DEFAULT_SEED}, max_n={self.DEFAULT_MAX_N}, jobs={self.JOBS})"

    def __repr__(self):
        """Detailed string representation of configuration"""
        return (f"Config(DEFAULT_SEED={self.DEFAULT_SEED}, "
                f"DEFAULT_MAX_N={self.DEFAULT_MAX_N}, "
                f"FALSIFIER_TRIALS={self.FALSIFIER_TRIALS}, "
                f"ENGEL_TRIALS={self.ENGEL_TRIALS}, "
                f"JOBS={self.JOBS})")


# Global configuration instance
_config = None

def get_config():
    """Get global configuration instance"""
    global _config
    if _config is None:
        _config = Config()
    return _config


def set_config(config):
    """Set global configuration instance"""
    global _config
    _config = config
