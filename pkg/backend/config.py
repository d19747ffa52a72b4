# config.py - User configuration management
import configparser

from backend.file_paths import get_config_file
from backend.app_logging import get_logger

logger = get_logger(__name__)

CONFIG_FILE = get_config_file()

DEFAULT_SEED = 20240611
DEFAULT_GROUP_CAP = 4096

DEFAULTS = {
    'compute': {
        'degree_bound': '',
        'jobs': '1',
        'seed': str(DEFAULT_SEED),
        'group_cap': str(DEFAULT_GROUP_CAP),
    },
    'report': {
        'json_path': '',
        'markdown_path': '',
        'epsilon_report': 'no',
    },
    'logging': {
        'level': 'INFO',
    },
}


def get_config_path():
    """Get the path to the config file in the data/user directory"""
    return CONFIG_FILE


def load_config():
    """Load configuration from config.ini, create with defaults if doesn't exist"""
    config = configparser.ConfigParser()
    config_path = get_config_path()

    if config_path.exists():
        config.read(config_path, encoding='utf-8')
    else:
        config.read_dict(DEFAULTS)
        save_config(config)

    # Fill in sections added after the file was written
    changed = False
    for section, values in DEFAULTS.items():
        if section not in config:
            config[section] = dict(values)
            changed = True
    if changed:
        save_config(config)

    return config


def save_config(config):
    """Save configuration to config.ini"""
    config_path = get_config_path()
    config_path.parent.mkdir(parents=True, exist_ok=True)
    with open(config_path, 'w', encoding='utf-8') as f:
        config.write(f)


def _get_positive_int(section, key, fallback):
    config = load_config()
    raw = config.get(section, key, fallback='').strip()
    if not raw:
        return fallback
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring [{section}] {key}={raw!r}: not an integer")
        return fallback
    if value < 1:
        logger.warning(f"Ignoring [{section}] {key}={value}: must be positive")
        return fallback
    return value


def _set_value(section, key, value):
    config = load_config()
    if section not in config:
        config[section] = {}
    config[section][key] = value
    save_config(config)


def get_degree_bound():
    """Degree bound for Hilbert polynomial stabilization, None means automatic"""
    return _get_positive_int('compute', 'degree_bound', None)

def set_degree_bound(bound):
    """Set the degree bound; None restores the automatic bound"""
    _set_value('compute', 'degree_bound', '' if bound is None else str(int(bound)))

def get_jobs():
    """Worker threads used by the suite runner"""
    return _get_positive_int('compute', 'jobs', 1)

def set_jobs(jobs):
    _set_value('compute', 'jobs', str(int(jobs)))

def get_seed():
    """Seed for randomized property sampling"""
    config = load_config()
    raw = config.get('compute', 'seed', fallback=str(DEFAULT_SEED)).strip()
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring [compute] seed={raw!r}: not an integer")
        return DEFAULT_SEED

def set_seed(seed):
    _set_value('compute', 'seed', str(int(seed)))

def get_group_cap():
    """Closure cap for finite matrix group generation"""
    return _get_positive_int('compute', 'group_cap', DEFAULT_GROUP_CAP)

def set_group_cap(cap):
    _set_value('compute', 'group_cap', str(int(cap)))

def get_epsilon_report():
    """Whether reports print the epsilon coefficients"""
    config = load_config()
    try:
        return config.getboolean('report', 'epsilon_report', fallback=False)
    except ValueError:
        logger.warning("Ignoring [report] epsilon_report: not a boolean")
        return False

def set_epsilon_report(value):
    _set_value('report', 'epsilon_report', 'yes' if value else 'no')

def get_json_path():
    """Default JSON report path, None when unset"""
    config = load_config()
    return config.get('report', 'json_path', fallback='').strip() or None

def get_markdown_path():
    """Default markdown report path, None when unset"""
    config = load_config()
    return config.get('report', 'markdown_path', fallback='').strip() or None

def set_report_paths(json_path=None, markdown_path=None):
    """Set both report paths at once"""
    config = load_config()
    if 'report' not in config:
        config['report'] = {}
    config['report']['json_path'] = json_path or ''
    config['report']['markdown_path'] = markdown_path or ''
    save_config(config)

def get_log_level():
    """Log level name from config"""
    config = load_config()
    return config.get('logging', 'level', fallback='INFO').strip().upper() or 'INFO'

def set_log_level(level):
    _set_value('logging', 'level', str(level).upper())
