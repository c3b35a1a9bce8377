"""Configuration settings for the circle diagram calculus."""
import os
import logging
import yaml
from pathlib import Path
from typing import List, Dict, Any
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Project root directory
PROJECT_ROOT = Path(__file__).parent.parent

# Enumeration and computation bounds
FORM_BOUND = int(os.getenv('FORM_BOUND', '12'))
MATCHING_BOUND = int(os.getenv('MATCHING_BOUND', '8'))
GRAM_BOUND = int(os.getenv('GRAM_BOUND', '5'))
TL_BOUND = int(os.getenv('TL_BOUND', '5'))
MEANDER_BOUND = int(os.getenv('MEANDER_BOUND', '6'))
SYMBOLIC_DET_MAX_SIZE = int(os.getenv('SYMBOLIC_DET_MAX_SIZE', '14'))
CROSS_BLOCK_CHECK_MAX = int(os.getenv('CROSS_BLOCK_CHECK_MAX', '128'))

# Probabilistic identity testing
IDENTITY_TRIALS = int(os.getenv('IDENTITY_TRIALS', '25'))
IDENTITY_COORD_BITS = int(os.getenv('IDENTITY_COORD_BITS', '32'))
DEFAULT_SEED = int(os.getenv('DEFAULT_SEED', '0'))

# Fixture library
FIXTURES_DIR = Path(os.getenv('FIXTURES_DIR', str(PROJECT_ROOT / 'fixtures')))
FIXTURES_CONFIG_FILE = Path(__file__).parent / 'fixtures.yaml'
PRINTED_TABLES_FILE = Path(__file__).parent / 'printed_tables.yaml'

# Logging Configuration
LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
LOG_TO_FILE = os.getenv('LOG_TO_FILE', 'true').lower() in ('1', 'true', 'yes')
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_DIR = PROJECT_ROOT / 'logs'

# Log files: main log plus one per tagged subcommand
LOG_FILE_MAIN = LOG_DIR / 'circlecalc.log'
TAGGED_LOG_FILES = {
    'gram': LOG_DIR / 'gram.log',
    'tables': LOG_DIR / 'tables.log',
    'meander': LOG_DIR / 'meander.log',
}


def load_fixtures_config() -> List[Dict[str, Any]]:
    """
    Load the fixture catalogue from YAML.

    Returns:
        List of fixture entries
    """
    try:
        with open(FIXTURES_CONFIG_FILE, 'r') as f:
            config = yaml.safe_load(f)
            return config.get('fixtures', [])
    except FileNotFoundError:
        logging.warning(f"Fixtures config file not found: {FIXTURES_CONFIG_FILE}")
        return []
    except Exception as e:
        logging.error(f"Error loading fixtures config: {e}")
        return []


def get_enabled_fixtures() -> List[Dict[str, Any]]:
    """
    Get only enabled fixtures from the catalogue.

    Returns:
        List of enabled fixture entries
    """
    return [fx for fx in load_fixtures_config() if fx.get('enabled', True)]


def load_printed_tables() -> Dict[int, List[Dict[str, Any]]]:
    """
    Load the printed Gram determinant tables.

    Returns:
        Mapping n -> list of printed rows
    """
    with open(PRINTED_TABLES_FILE, 'r') as f:
        config = yaml.safe_load(f)
    return {int(n): rows for n, rows in config.get('tables', {}).items()}


def setup_logging(tag_filter=None):
    """
    Configure logging for the application.
    Writes a main log file plus tag-filtered logs for long-running subcommands.

    Args:
        tag_filter: Optional subcommand tag ('gram', 'tables', 'meander') whose log to emphasize
    """
    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    handlers = []

    # Console handler (stderr, so reports on stdout stay clean)
    console_handler = logging.StreamHandler()
    console_handler.setLevel(getattr(logging, LOG_LEVEL))
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handlers.append(console_handler)

    if LOG_TO_FILE:
        LOG_DIR.mkdir(exist_ok=True)

        main_handler = logging.FileHandler(LOG_FILE_MAIN, encoding='utf-8')
        main_handler.setLevel(getattr(logging, LOG_LEVEL))
        main_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handlers.append(main_handler)

        for tag, path in TAGGED_LOG_FILES.items():
            if tag_filter is not None and tag != tag_filter:
                continue
            tag_handler = logging.FileHandler(path, encoding='utf-8')
            tag_handler.setLevel(getattr(logging, LOG_LEVEL))
            tag_handler.setFormatter(logging.Formatter(LOG_FORMAT))
            tag_handler.addFilter(TagLogFilter(tag))
            handlers.append(tag_handler)

    logging.basicConfig(
        level=getattr(logging, LOG_LEVEL),
        format=LOG_FORMAT,
        handlers=handlers
    )


class TagLogFilter(logging.Filter):
    """Filter logs based on subcommand tag markers in the message."""

    def __init__(self, tag):
        super().__init__()
        self.tag = tag.upper()

    def filter(self, record):
        """
        Return True if the record carries this filter's [TAG] marker.
        Untagged records stay in the main log only.
        """
        return f'[{self.tag}]' in record.getMessage()
