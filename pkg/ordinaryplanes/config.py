"""
Configuration management

Hierarchical loading from user and project files, an explicit --config file,
the environment and command-line flags. YAML is preferred, JSON is accepted.
"""

import json
import os
import sys
from dataclasses import dataclass, asdict, field
from pathlib import Path
from typing import Optional, Dict, Any
import logging

logger = logging.getLogger('ordinaryplanes')

try:
    import yaml
    HAS_YAML = True
except ImportError:
    HAS_YAML = False
    logger.debug("PyYAML not available, will use JSON for config files")

ENV_EPS = 'ORDINARYPLANES_EPS'
POLICIES = ('published', 'strongest')


@dataclass
class Config:
    """
    Configuration dataclass

    Holds every tunable of the toolkit.
    """

    # Numeric backend
    eps: float = 1e-7

    # Enumeration
    workers: str = '1'  # 'auto' or number

    # Progress settings
    show_progress: bool = True
    simple_progress: bool = False
    no_progress: bool = False

    # Bounds
    policy: str = 'published'
    ip_search_limit: int = 12
    table_n_max: int = 13
    table_d_max: int = 7
    table_row_limits: Dict[int, int] = field(default_factory=lambda: {6: 10, 7: 10})

    # Randomized checks
    seed: int = 2016
    property_samples: int = 200

    # Logging settings
    log_level: str = 'INFO'
    log_file: Optional[str] = None
    verbose: bool = False
    quiet: bool = False

    # Config file settings
    config_file: Optional[str] = None

    @classmethod
    def defaults(cls) -> 'Config':
        return cls()

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    def update(self, updates: Dict[str, Any]) -> 'Config':
        """
        Update config with new values; unknown keys and None values are ignored

        Returns:
            Self for chaining
        """
        for key, value in updates.items():
            if hasattr(self, key) and value is not None:
                if key == 'table_row_limits':
                    value = {int(k): int(v) for k, v in dict(value).items()}
                setattr(self, key, value)
        return self

    @property
    def progress_enabled(self) -> bool:
        return self.show_progress and not self.no_progress and not self.quiet

    def validate(self) -> bool:
        """
        Validate configuration values

        Returns:
            True if valid, raises ValueError if invalid
        """
        try:
            self.eps = float(self.eps)
        except (TypeError, ValueError):
            raise ValueError(f"eps must be a number, got: {self.eps}")
        if not 0 < self.eps < 1e-2:
            raise ValueError(f"eps {self.eps:g} out of range (0, 1e-2)")

        if str(self.workers) != 'auto':
            try:
                workers_num = int(self.workers)
            except ValueError:
                raise ValueError(f"Workers must be a number or 'auto', got: {self.workers}")
            if workers_num < 1 or workers_num > 32:
                raise ValueError("Workers must be between 1-32 or 'auto'")

        if self.policy not in POLICIES:
            raise ValueError(f"Invalid policy: {self.policy}. Must be one of {list(POLICIES)}")

        if not 2 <= int(self.ip_search_limit) <= 20:
            raise ValueError(f"ip_search_limit {self.ip_search_limit} out of range (2-20)")

        if self.table_d_max < 2 or self.table_n_max < 4:
            raise ValueError(f"Table range needs d_max >= 2 and n_max >= 4, got {self.table_d_max}, {self.table_n_max}")

        if self.property_samples < 1:
            raise ValueError(f"property_samples must be positive, got {self.property_samples}")

        valid_levels = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']
        if self.log_level.upper() not in valid_levels:
            raise ValueError(
                f"Invalid log level: {self.log_level}. "
                f"Must be one of {valid_levels}"
            )

        return True


def load_yaml_file(file_path: Path) -> Dict[str, Any]:
    """
    Load YAML config file

    Raises:
        ValueError: If YAML parsing fails
    """
    if not HAS_YAML:
        raise ValueError("PyYAML not installed, cannot load YAML files")

    try:
        with open(file_path, 'r') as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ValueError(f"Invalid YAML in {file_path}: {e}")
    except OSError as e:
        raise ValueError(f"Could not read {file_path}: {e}")

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError("Config file must contain a dictionary")

    logger.debug(f"Loaded YAML config from {file_path}")
    return data


def load_json_file(file_path: Path) -> Dict[str, Any]:
    """
    Load JSON config file

    Raises:
        ValueError: If JSON parsing fails
    """
    try:
        with open(file_path, 'r') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ValueError(f"Invalid JSON in {file_path}: {e}")
    except OSError as e:
        raise ValueError(f"Could not read {file_path}: {e}")

    if not isinstance(data, dict):
        raise ValueError("Config file must contain a JSON object")

    logger.debug(f"Loaded JSON config from {file_path}")
    return data


def load_config_file(file_path: Path) -> Dict[str, Any]:
    """Load a config file, choosing YAML or JSON by extension"""
    if not file_path.exists():
        logger.warning(f"Config file not found: {file_path}")
        return {}

    suffix = file_path.suffix.lower()
    if suffix in ['.yaml', '.yml']:
        return load_yaml_file(file_path)
    if suffix == '.json':
        return load_json_file(file_path)

    if HAS_YAML:
        try:
            return load_yaml_file(file_path)
        except ValueError:
            pass
    try:
        return load_json_file(file_path)
    except ValueError as e:
        raise ValueError(f"Could not parse {file_path} as YAML or JSON: {e}")


def get_config_dir() -> Path:
    if sys.platform == 'win32':
        return Path.home() / 'AppData' / 'Local' / 'ordinaryplanes'
    return Path.home() / '.config' / 'ordinaryplanes'


def get_user_config_path() -> Path:
    """
    Get path to user config file

    Returns:
        Path to ~/.config/ordinaryplanes/config.yaml (or .json)
    """
    config_dir = get_config_dir()
    yaml_path = config_dir / 'config.yaml'
    json_path = config_dir / 'config.json'
    if yaml_path.exists():
        return yaml_path
    if json_path.exists():
        return json_path
    return yaml_path


def get_project_config_path() -> Path:
    """
    Get path to project-level config file

    Returns:
        Path to ./.ordinaryplanes.yaml (or .yml/.json) in current directory
    """
    cwd = Path.cwd()
    for name in ['.ordinaryplanes.yaml', '.ordinaryplanes.yml', '.ordinaryplanes.json']:
        path = cwd / name
        if path.exists():
            return path
    return cwd / '.ordinaryplanes.yaml'


def load_config(cli_args: Optional[Any] = None) -> Config:
    """
    Load configuration from multiple sources with priority

    Priority (highest to lowest):
    1. CLI arguments
    2. ORDINARYPLANES_EPS environment variable
    3. Explicit --config file
    4. Project config file (./.ordinaryplanes.yaml)
    5. User config file (~/.config/ordinaryplanes/config.yaml)
    6. Default values

    Args:
        cli_args: Parsed command-line arguments (argparse Namespace)

    Returns:
        Merged Config object

    Raises:
        ValueError: If a specified file cannot be loaded or validation fails
    """
    config = Config.defaults()

    user_config_path = get_user_config_path()
    if user_config_path.exists():
        try:
            config.update(load_config_file(user_config_path))
            logger.debug(f"Loaded user config from {user_config_path}")
        except ValueError as e:
            logger.warning(f"Could not load user config: {e}")

    project_config_path = get_project_config_path()
    if project_config_path.exists():
        try:
            config.update(load_config_file(project_config_path))
            logger.debug(f"Loaded project config from {project_config_path}")
        except ValueError as e:
            logger.warning(f"Could not load project config: {e}")

    if cli_args is not None and getattr(cli_args, 'config', None):
        config_path = Path(cli_args.config).expanduser()
        if not config_path.exists():
            raise ValueError(f"Could not load specified config file: {config_path} does not exist")
        try:
            config.update(load_config_file(config_path))
            config.config_file = str(config_path)
            logger.debug(f"Loaded explicit config from {config_path}")
        except ValueError as e:
            raise ValueError(f"Could not load specified config file: {e}")

    env_eps = os.environ.get(ENV_EPS)
    if env_eps:
        try:
            config.eps = float(env_eps)
        except ValueError:
            raise ValueError(f"{ENV_EPS} must be a number, got: {env_eps}")

    if cli_args is not None:
        cli_dict = {k: v for k, v in vars(cli_args).items() if v is not None and k != 'config'}
        config.update(cli_dict)

    try:
        config.validate()
    except ValueError as e:
        raise ValueError(f"Invalid configuration: {e}")

    return config


DEFAULT_CONFIG_YAML = """# ordinaryplanes configuration
# All settings are optional and can be overridden via command-line arguments

# Numeric backend
eps: 1.0e-7             # Incidence tolerance for floating coordinates

# Enumeration
workers: '1'            # Worker processes for hyperplane enumeration ('auto' or 1-32)

# Progress settings
show_progress: true     # Show progress bars for long enumerations and verify
simple_progress: false  # Use plain-text progress (for incompatible terminals)
no_progress: false      # Completely disable progress display

# Bounds
policy: published       # 'published' reproduces the small-values table, 'strongest' maximizes
ip_search_limit: 12     # Largest n - d handed to the counting search
table_n_max: 13
table_d_max: 7
table_row_limits:       # Last row shown in these columns
  6: 10
  7: 10

# Randomized checks
seed: 2016
property_samples: 200

# Logging settings
log_level: INFO         # Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
log_file: null          # Log file path (null for no file logging)
verbose: false          # Enable verbose output (sets log_level to DEBUG)
quiet: false            # Suppress console output except errors
"""


def save_default_config(file_path: Optional[Path] = None, format: str = 'yaml') -> Path:
    """
    Generate and save a default config file

    Args:
        file_path: Path to save config (optional, uses default location)
        format: File format ('yaml' or 'json')

    Returns:
        Path where config was saved

    Raises:
        ValueError: If format is invalid or saving fails
    """
    if file_path is None:
        file_path = get_user_config_path()
    file_path.parent.mkdir(parents=True, exist_ok=True)

    if format == 'yaml':
        if not HAS_YAML:
            raise ValueError("PyYAML not installed, cannot generate YAML config")
        content = DEFAULT_CONFIG_YAML
    elif format == 'json':
        config_dict = Config.defaults().to_dict()
        config_dict.pop('config_file')
        content = json.dumps(config_dict, indent=2) + '\n'
    else:
        raise ValueError(f"Invalid format: {format}. Must be 'yaml' or 'json'")

    try:
        with open(file_path, 'w') as f:
            f.write(content)
    except OSError as e:
        raise ValueError(f"Could not write config file: {e}")

    logger.info(f"Generated default config file: {file_path}")
    return file_path
