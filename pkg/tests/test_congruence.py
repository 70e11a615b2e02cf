# (c) Copyright The markoff toolkit authors 2026

import unittest

import pytest

from markoff.congruence import (ELLIPTIC, GENERAL_LADIC, HYPERBOLIC, MAIN, ORBIT, TWICE_ORBIT, CongruenceVerdict,
                                centralizer_order_check, congruence_rule, required_modulus, verify_range,
                                verify_surface)
from markoff.errors import UsageError
from markoff.surface import t_values


class TestRules(unittest.TestCase):
    def test_main_rule(self):
        self.assertEqual(required_modulus(7, -2), (7, ORBIT))
        self.assertEqual(congruence_rule(13, 11)[2], MAIN)

    def test_hyperbolic_and_elliptic(self):
        # t = 1 mod 7: t^2 - 4 = 4 is a square, n = 6
        modulus, side, rule = congruence_rule(7, 1)
        self.assertEqual(rule, HYPERBOLIC)
        self.assertEqual(side, TWICE_ORBIT)
        self.assertEqual(modulus, 6 // 2)
        # t = 0 mod 7: t^2 - 4 = 3 is not a square, n = 4
        modulus, side, rule = congruence_rule(7, 0)
        self.assertEqual(rule, ELLIPTIC)
        self.assertEqual(modulus, 1)

    def test_ladic_rule(self):
        modulus, side, rule = congruence_rule(7, 1, ell=3)
        self.assertEqual(rule, GENERAL_LADIC)
        self.assertEqual(side, ORBIT)
        # r = ord_3(6) = 1, s = ord_3(7 * 48) - r = 0
        self.assertEqual(modulus, 3)
        self.assertEqual(congruence_rule(7, 1, ell=5)[0], 1)

    def test_cayley_cubic_is_excluded(self):
        with self.assertRaises(UsageError):
            congruence_rule(7, 2)
        with self.assertRaises(UsageError):
            verify_surface(7, 9)

    def test_verdict_slack(self):
        v = CongruenceVerdict(7, 1, (1, 1, 1), 3, HYPERBOLIC, 2, TWICE_ORBIT)
        self.assertTrue(v.passed)
        self.assertTrue(v.needs_twice)
        v = CongruenceVerdict(7, 5, (1, 1, 1), 3, MAIN, 7, ORBIT)
        self.assertFalse(v.passed)
        self.assertFalse(v.needs_twice)
        self.assertTrue(v.csv_row().endswith(",FAIL"))


class TestSurfaces(unittest.TestCase):
    def test_main_divisibility(self):
        verdicts = verify_surface(7, -2)
        self.assertEqual(len(verdicts), 1)
        self.assertEqual(verdicts[0].size, 28)
        self.assertTrue(verdicts[0].passed)

    def test_every_trace(self):
        for p in (5, 7, 11, 13):
            for t in t_values(p):
                self.assertTrue(all(v.passed for v in verify_surface(p, t)), (p, t))

    def test_centralizer_orders(self):
        self.assertEqual(centralizer_order_check(5, -2), 10)
        self.assertEqual(centralizer_order_check(7, 0), 8)
        self.assertEqual(centralizer_order_check(7, 1), 6)


@pytest.mark.parametrize("threads", [1, 4])
def test_sweep_has_no_failures(threads):
    assert verify_range(31, threads=threads) == []


def test_sweep_to_one_hundred():
    assert verify_range(100, threads=4) == []
