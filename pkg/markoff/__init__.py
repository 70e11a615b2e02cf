# coding=utf-8
"""
markoff: Markoff surfaces over F_p, the modular curves M_p they cover, and Nielsen
classes of generating pairs of finite groups.

    markoff orbits --p 7 --t -2
    markoff genus --p 11
    markoff nielsen --group A5 --higman-order 5
"""

from .version import VERSION

__author__ = 'The markoff toolkit authors'
__copyright__ = 'Copyright 2026 The markoff toolkit authors'
__license__ = 'MIT'
__version__ = VERSION
