# (c) Copyright The markoff toolkit authors 2026

# Module version file.  Used by setup.py and snapshot reporting.

VERSION = '0.4.0'
