# (c) Copyright The markoff toolkit authors 2026

import os

import pytest

# Set our testing flags
os.environ["MARKOFF_TEST"] = "true"
# os.environ["MARKOFF_DEBUG"] = "true"

# Make sure the markoff package is fully loaded
import markoff  # noqa: F401,E402

from markoff.configurator import config  # noqa: E402


@pytest.fixture()
def tunables():
    """ config overrides made in a test are undone afterwards """
    saved = {section: dict(values) for section, values in config.items()}
    yield config
    for section, values in saved.items():
        config[section].clear()
        config[section].update(values)
