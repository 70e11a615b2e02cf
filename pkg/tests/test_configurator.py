# (c) Copyright The markoff toolkit authors 2026

import unittest

from markoff.configurator import config


class TestConfigurator(unittest.TestCase):
    def test_has_default_config(self):
        self.assertEqual(config['groups']['dense_limit'], 4096)
        self.assertEqual(config['markoff']['verified_prime_bound'], 3000)
        self.assertEqual(config['surface']['p_cap'], 1 << 21)

    def test_unknown_sections_are_empty(self):
        self.assertEqual(dict(config['no_such_section']), {})
        del config['no_such_section']


def test_overrides_are_undone(tunables):
    tunables['nielsen']['lift_attempts'] = 0
    assert config['nielsen']['lift_attempts'] == 0
