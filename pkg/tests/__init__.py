# (c) Copyright The markoff toolkit authors 2026

import os

os.environ["MARKOFF_TEST"] = "true"
