import logging
import sys

import config

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def _level() -> int:
    level = logging.getLevelName(config.LOG_LEVEL.upper())
    return level if isinstance(level, int) else logging.WARNING


def setup_logger(name: str = __name__) -> logging.Logger:
    """Logger for one cyclodiff module; records go to stderr, documents stay on stdout"""
    logging.basicConfig(format=LOG_FORMAT, level=_level(), stream=sys.stderr)
    return logging.getLogger(name)
