# (c) Copyright The markoff toolkit authors 2026

"""
Option classes for markoff runs

BaseOptions - base class for all runs.  Holds logging settings common to all.
  - RunOptions - The options class used by the command line dispatcher: cache location,
    worker threads and the prime safety cap.
"""
import os
import logging

from .log import logger


class BaseOptions(object):
    """ Base class for all option classes.  Holds items common to all """
    def __init__(self, **kwds):
        self.debug = False
        self.log_level = logging.WARN

        if "MARKOFF_DEBUG" in os.environ:
            self.log_level = logging.DEBUG
            self.debug = True

        value = os.environ.get("MARKOFF_LOG_LEVEL", None)
        if value is not None and not self.debug:
            value = value.lower()
            if value == "debug":
                self.log_level = logging.DEBUG
            elif value == "info":
                self.log_level = logging.INFO
            elif value == "warn" or value == "warning":
                self.log_level = logging.WARNING
            elif value == "error":
                self.log_level = logging.ERROR
            else:
                logger.warning("Unknown MARKOFF_LOG_LEVEL specified: %s", value)

        self.__dict__.update(kwds)


class RunOptions(BaseOptions):
    """ The options class used by the command line dispatcher """
    DEFAULT_THREADS = 1
    DEFAULT_P_MAX = 3000
    DEFAULT_FORMAT = "json"

    def __init__(self, **kwds):
        super(RunOptions, self).__init__()

        self.cache_dir = os.environ.get("MARKOFF_CACHE_DIR", None)
        self.output_format = self.DEFAULT_FORMAT
        self.threads = self._int_from_env("MARKOFF_THREADS", self.DEFAULT_THREADS)
        self.p_max = self._int_from_env("MARKOFF_P_MAX", self.DEFAULT_P_MAX)

        # Explicit settings win over the environment, except the cache dir which the env overrides.
        env_cache = self.cache_dir
        self.__dict__.update({k: v for k, v in kwds.items() if v is not None})
        if env_cache is not None:
            self.cache_dir = env_cache

        if self.threads < 1:
            logger.warning("Thread count %s is not positive.  Using 1.", self.threads)
            self.threads = 1

    @staticmethod
    def _int_from_env(name, default):
        raw = os.environ.get(name, None)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            logger.warning("Likely invalid %s=%s value.  Using default %s.", name, raw, default)
            return default
