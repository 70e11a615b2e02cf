# (c) Copyright The markoff toolkit authors 2026

import logging

logger = None


def get_standard_logger():
    """
    Retrieves and configures a standard logger for the markoff package

    @return: Logger
    """
    standard_logger = logging.getLogger("markoff")

    if not standard_logger.handlers:
        ch = logging.StreamHandler()
        f = logging.Formatter('%(asctime)s: %(process)d %(levelname)s %(name)s: %(message)s')
        ch.setFormatter(f)
        standard_logger.addHandler(ch)
    standard_logger.setLevel(logging.WARN)
    return standard_logger


def set_log_level(level):
    """
    Applies a log level (as resolved by the options classes) to the package logger

    @param level: a logging level constant
    @return: None
    """
    logger.setLevel(level)


logger = get_standard_logger()
