# (c) Copyright The markoff toolkit authors 2026

"""
This module provides "python -m markoff" functionality.  It runs the same dispatcher as the
`markoff` console script.
"""
import sys

from .cli import main

sys.exit(main())
