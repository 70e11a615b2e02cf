# (c) Copyright The markoff toolkit authors 2026

import io
import os
import shutil
import tempfile

from markoff.cli import main

testenv = {}

"""
Sizes
"""
# Primes small enough for every test to stay fast.
testenv['primes'] = (5, 7, 11, 13)
testenv['p_1_mod_4'] = (5, 13, 17, 29)
testenv['p_3_mod_4'] = (7, 11, 19, 23)

"""
Environment
"""
MARKOFF_ENV = ("MARKOFF_DEBUG", "MARKOFF_LOG_LEVEL", "MARKOFF_CACHE_DIR", "MARKOFF_THREADS", "MARKOFF_P_MAX")


def clear_markoff_env():
    """
    Removes every MARKOFF_* setting a developer may have exported, so option tests start clean.
    @return: dict of the removed values, for restore_markoff_env
    """
    saved = {}
    for name in MARKOFF_ENV:
        if name in os.environ:
            saved[name] = os.environ.pop(name)
    return saved


def restore_markoff_env(saved):
    for name in MARKOFF_ENV:
        os.environ.pop(name, None)
    os.environ.update(saved)


class TempCacheDir(object):
    """ A scratch cache directory, removed on exit. """

    def __enter__(self):
        self.path = tempfile.mkdtemp(prefix="markoff-cache-")
        return self.path

    def __exit__(self, *exc):
        shutil.rmtree(self.path, ignore_errors=True)
        return False


def run_cli(*argv):
    """
    Runs the markoff command in process.
    @param argv: command line words
    @return: (exit status, standard output text)
    """
    out = io.StringIO()
    status = main([str(a) for a in argv], out=out)
    return status, out.getvalue()
