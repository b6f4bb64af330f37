"""
LieVerify Backend - Utilities Module
Common utilities for logging, report digests, progress and random rationals
"""

import os
import sys
import json
import hashlib
import logging
import logging.handlers
from fractions import Fraction

from tqdm import tqdm


def report_digest(payload, algorithm='sha256'):
    """
    Calculate the hash of a JSON-serializable payload

    The payload is serialized canonically (sorted keys, fixed separators) so two
    runs that produce equal reports produce equal digests.

    Args:
        payload: JSON-serializable object
        algorithm (str): Hash algorithm to use (sha256, md5, sha1)

    Returns:
        str: Hexadecimal hash string
    """
    # round trip first so integer keys become strings before sorting
    plain = json.loads(json.dumps(payload))
    text = json.dumps(plain, sort_keys=True, separators=(',', ':'))
    hash_obj = hashlib.new(algorithm)
    hash_obj.update(text.encode('utf-8'))
    return hash_obj.hexdigest()


def format_duration(seconds):
    """
    Format a duration in human-readable form

    Args:
        seconds (float): Elapsed seconds

    Returns:
        str: Formatted duration string
    """
    if seconds < 1:
        return f"{seconds * 1000:.0f}ms"
    if seconds < 60:
        return f"{seconds:.2f}s"
    minutes = int(seconds // 60)
    return f"{minutes}m {int(seconds % 60)}s"


def format_fraction(value):
    """Render a rational as 'p' or 'p/q'"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def random_fraction(rng, bound=5, nonzero=False):
    """
    Draw a small random rational p/q

    Args:
        rng: random.Random instance owned by the caller
        bound (int): |p| <= bound and 1 <= q <= bound
        nonzero (bool): Redraw until the value is nonzero

    Returns:
        Fraction: The sampled value
    """
    while True:
        value = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if value or not nonzero:
            return value


def progress(iterable, desc, total=None, config=None):
    """
    Wrap an iterable in a tqdm bar when progress display is enabled

    Args:
        iterable: Items to iterate
        desc (str): Bar label
        total (int): Item count if the iterable has no len()
        config: Configuration object

    Returns:
        Iterable yielding the same items
    """
    if config is None:
        from .config import get_config
        config = get_config()

    if not config.SHOW_PROGRESS:
        return iterable
    return tqdm(iterable, desc=desc, total=total, file=sys.stderr, leave=False)


def setup_logging(config=None, console=True):
    """
    Set up logging with a rotating file handler and a stderr console handler

    Args:
        config: Configuration object with logging settings
        console (bool): Attach the console handler
    """
    if config is None:
        from .config import get_config
        config = get_config()

    os.makedirs(os.path.dirname(config.LOG_FILE), exist_ok=True)

    logger = logging.getLogger()
    logger.setLevel(getattr(logging, str(config.LOG_LEVEL).upper(), logging.INFO))

    # Remove existing handlers
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    file_handler = logging.handlers.RotatingFileHandler(
        config.LOG_FILE,
        maxBytes=config.MAX_LOG_SIZE,
        backupCount=config.LOG_BACKUP_COUNT,
        encoding='utf-8'
    )

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)

    # stdout carries reports, so the console handler writes to stderr
    if console:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    logging.info(f"Logging initialized - Log file: {config.LOG_FILE}")
