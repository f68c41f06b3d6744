import os
import copy
import configparser
from pathlib import Path

from algebra.errors import ConfigError

# Default configuration
DEFAULT_CONFIG = {
    "caps": {
        "max_atoms": 20000,
        "max_states": 400000,
        "max_vertices": 24,
        "max_matrices": 2000000,
        "max_hypernetworks": 200000,
        "max_graphs": 2000000,
        "max_rounds": 64
    },
    "solver": {
        "workers": 1,
        "seed": 0,
        "strategy_limit": 5000
    },
    "output": {
        "json_output": False,
        "color_output": True
    },
    "report": {
        "max_witnesses": 10,
        "include_timing": True
    },
    "logging": {
        "level": "INFO",
        "console_output": False,
        "file_output": True
    },
    "performance": {
        "grid_workers": 4
    }
}

CAPS_ENV = "ARCADE_CAPS"

ENGINE_VERSION = "1.0.0"


def GetConfigPath():
    """Get the path to the config file"""
    home = Path.home()
    config_dir = home / ".arcade"
    config_file = config_dir / "config.ini"
    return config_dir, config_file


def ConvertValue(value, default=None):
    """Convert a text value to the type of its default"""
    text = str(value).strip()

    if isinstance(default, bool) or text.lower() in ('true', 'false'):
        if text.lower() in ('true', 'yes', '1'):
            return True
        if text.lower() in ('false', 'no', '0'):
            return False
        raise ValueError(f"not a boolean: {text}")

    if isinstance(default, int) or (default is None and text.lstrip('-').isdigit()):
        # 1e5 style values are accepted for integer caps
        number = float(text)
        if number != int(number):
            raise ValueError(f"not an integer: {text}")
        return int(number)

    if isinstance(default, float):
        return float(text)

    return text


def MergeConfig(user_config):
    """Merge a partial config into a copy of the defaults"""
    config = copy.deepcopy(DEFAULT_CONFIG)
    for section, values in user_config.items():
        if section in config:
            config[section].update(values)
        else:
            config[section] = dict(values)
    return config


def ReadConfigText(text):
    """Parse key-value config text into a typed nested dict"""
    parser = configparser.ConfigParser()
    parser.read_string(text)

    user_config = {}
    for section in parser.sections():
        defaults = DEFAULT_CONFIG.get(section, {})
        user_config[section] = {}
        for key, raw in parser.items(section):
            user_config[section][key] = ConvertValue(raw, defaults.get(key))
    return user_config


def ApplyCapsOverride(config, override=None):
    """
    Apply ARCADE_CAPS="max_atoms=5000,max_states=1e5" on top of config['caps']
    Raises ConfigError on malformed entries
    """
    if override is None:
        override = os.environ.get(CAPS_ENV, "")

    if not override.strip():
        return config

    for entry in override.split(','):
        if not entry.strip():
            continue
        if '=' not in entry:
            raise ConfigError(f"{CAPS_ENV} entry '{entry}' is not key=value")
        key, value = (part.strip() for part in entry.split('=', 1))
        if key not in DEFAULT_CONFIG['caps']:
            raise ConfigError(f"{CAPS_ENV}: unknown cap '{key}'")
        try:
            number = ConvertValue(value, DEFAULT_CONFIG['caps'][key])
        except ValueError as e:
            raise ConfigError(f"{CAPS_ENV}: {key}: {e}") from e
        if number < 1:
            raise ConfigError(f"{CAPS_ENV}: {key} must be positive")
        config['caps'][key] = number

    return config


def LoadConfig(apply_env=True):
    """Load configuration from file or return defaults"""
    config_dir, config_file = GetConfigPath()

    config = copy.deepcopy(DEFAULT_CONFIG)
    if config_file.exists():
        try:
            with open(config_file, 'r', encoding='utf-8') as f:
                config = MergeConfig(ReadConfigText(f.read()))
        except Exception as e:
            print(f"Warning: Could not load config file: {e}")
            config = copy.deepcopy(DEFAULT_CONFIG)

    if apply_env:
        config = ApplyCapsOverride(config)
    return config


def GetCaps(config=None):
    """Effective cap table; defaults plus ARCADE_CAPS when no config is given"""
    if config is None:
        config = ApplyCapsOverride(copy.deepcopy(DEFAULT_CONFIG))
    caps = dict(DEFAULT_CONFIG['caps'])
    caps.update(config.get('caps', {}))
    return caps


def RenderConfigText(config):
    """Render a nested config dict as key-value text"""
    lines = []
    for section, values in config.items():
        lines.append(f"[{section}]")
        for key, value in values.items():
            lines.append(f"{key} = {value}")
        lines.append("")
    return "\n".join(lines)


def SaveConfig(config):
    """Save configuration to file"""
    config_dir, config_file = GetConfigPath()

    # Create directory if it doesn't exist
    config_dir.mkdir(parents=True, exist_ok=True)

    try:
        with open(config_file, 'w', encoding='utf-8') as f:
            f.write(RenderConfigText(config))
        return True
    except Exception as e:
        print(f"Error saving config: {e}")
        return False


def InitializeConfig():
    """Create default config file if it doesn't exist"""
    config_dir, config_file = GetConfigPath()

    if not config_file.exists():
        print(f"Creating default configuration at {config_file}")
        config_dir.mkdir(parents=True, exist_ok=True)
        return SaveConfig(DEFAULT_CONFIG)
    return True


def ShowConfig():
    """Display current configuration"""
    config = LoadConfig()
    config_dir, config_file = GetConfigPath()

    print(f"Configuration file: {config_file}")
    if os.environ.get(CAPS_ENV):
        print(f"{CAPS_ENV} override: {os.environ[CAPS_ENV]}")
    print("\nCurrent settings:")
    print(RenderConfigText(config))


def UpdateConfigValue(section, key, value):
    """Update a specific configuration value"""
    config = LoadConfig(apply_env=False)

    if section not in config:
        config[section] = {}

    try:
        value = ConvertValue(value, config[section].get(key))
    except ValueError as e:
        print(f"Error: {section}.{key}: {e}")
        return False

    config[section][key] = value

    if SaveConfig(config):
        print(f"Updated {section}.{key} = {value}")
        return True
    return False


def ResetConfig():
    """Reset configuration to defaults"""
    if SaveConfig(DEFAULT_CONFIG):
        print("Configuration reset to defaults")
        return True
    return False
