# (c) Copyright The markoff toolkit authors 2026

"""
The cache lifecycle of one computed artifact (a point table or an orbit list):

    lookup     *                  -> probing
    load       probing            -> loaded
    recompute  probing | loaded   -> computed
    store      computed           -> stored

A missing or unreadable cache file never aborts a run; it sends the machine down the
recompute path.
"""
import os
import threading

from fysom import Fysom

from .errors import CacheError
from .log import logger


class CacheMachine(object):
    """
    Drives one artifact through the lifecycle.

    :param path: cache file path, or None to always recompute and never store
    :param compute: callable producing the artifact
    :param encode: artifact -> bytes
    :param decode: bytes -> artifact, raising CacheError on bad input
    """
    fsm = None
    value = None

    def __init__(self, path, compute, encode, decode):
        self.path = path
        self.compute = compute
        self.encode = encode
        self.decode = decode
        self.fsm = Fysom({
            "events": [
                ("lookup",    "*",                    "probing"),
                ("load",      "probing",              "loaded"),
                ("recompute", ["probing", "loaded"],  "computed"),
                ("store",     "computed",             "stored")],
            "callbacks": {
                # Can add the following to debug
                # "onchangestate":  self.print_state_change,
                "onlookup":       self.probe_cache,
                "onload":         self.read_cache,
                "onrecompute":    self.compute_value,
                "onstore":        self.write_cache}})

    @staticmethod
    def print_state_change(e):
        logger.debug('========= (%i#%s) cache event: %s, src: %s, dst: %s ==========',
                     os.getpid(), threading.current_thread().name, e.event, e.src, e.dst)

    def run(self):
        """
        :return: the artifact, loaded or freshly computed
        """
        self.fsm.lookup()
        return self.value

    @property
    def state(self):
        return self.fsm.current

    def probe_cache(self, e):
        if self.path is not None and os.path.isfile(self.path):
            self.fsm.load()
        else:
            self.fsm.recompute()

    def read_cache(self, e):
        try:
            with open(self.path, 'rb') as f:
                self.value = self.decode(f.read())
            logger.debug("cache hit: %s", self.path)
        except (CacheError, OSError) as exc:
            logger.warning("Ignoring cache file %s: %s.  Recomputing.", self.path, exc)
            self.fsm.recompute()

    def compute_value(self, e):
        self.value = self.compute()
        if self.path is not None:
            self.fsm.store()

    def write_cache(self, e):
        try:
            directory = os.path.dirname(self.path)
            if directory and not os.path.isdir(directory):
                os.makedirs(directory)
            tmp = self.path + ".tmp"
            with open(tmp, 'wb') as f:
                f.write(self.encode(self.value))
            os.replace(tmp, self.path)
        except OSError:
            logger.warning("Could not write cache file %s", self.path, exc_info=True)
