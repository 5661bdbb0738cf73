"""
Logging for the fatcantor CLI. stdout carries the JSON report only, so every
record goes to stderr and, with log_to_file, to a file under run_logs/.

The package logger carries the requested level; the root logger stays at
WARNING so that third-party libraries do not flood a run.
"""

import logging
import logging.config

__all__ = [
    'set_log_config',
    'get_log_config',
    'PACKAGE_LOGGER',
]

PACKAGE_LOGGER = 'fatcantor'

_FORMATS = {
    'debug': '%(levelname)s %(asctime)s.%(msecs)03d %(name)s:%(lineno)s %(funcName)s(%(process)s): %(message)s',
    'standard': '%(levelname)s %(asctime)s.%(msecs)03d : %(message)s',
}


def get_log_config(level: int = logging.INFO, filename: str = None) -> dict:
    fmt = 'debug' if level <= logging.DEBUG else 'standard'

    handlers = {
        'stderr': {
            'formatter': fmt,
            'level': level,
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
        },
    }
    if filename:
        handlers['file'] = {
            'formatter': fmt,
            'level': level,
            'class': 'logging.FileHandler',
            'filename': filename,
            'mode': 'w',
            'encoding': 'utf-8',
        }

    return {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            name: {'format': text, 'datefmt': '%H:%M:%S'} for name, text in _FORMATS.items()
        },
        'handlers': handlers,
        'root': {
            'handlers': list(handlers),
            'level': logging.WARNING,
        },
        'loggers': {
            PACKAGE_LOGGER: {'level': level},
        },
    }


def set_log_config(level: int = logging.INFO, filename: str = None):
    logging.config.dictConfig(get_log_config(level, filename))
    logging.getLogger(__name__).debug(f'Logging to stderr{f" and {filename}" if filename else ""} at level {level}.')
