# (c) Copyright The markoff toolkit authors 2026

import unittest
from fractions import Fraction

import pytest

from markoff.arith import (PrimeField, QuadExt, ceil_div, check_prime, element_order, l_valuation,
                           least_nonresidue, legendre, n_of_trace, phi_capital, sqrt_mod)
from markoff.errors import UsageError


class TestPrimeField(unittest.TestCase):
    def setUp(self):
        self.F = PrimeField(7)

    def tearDown(self):
        pass

    def test_field_operations(self):
        a = self.F(3)
        b = self.F(5)
        self.assertEqual(a + b, 1)
        self.assertEqual(a - b, 5)
        self.assertEqual(a * b, 1)
        self.assertEqual(a / b, 2)
        self.assertEqual(-a, 4)
        self.assertEqual(a ** 6, 1)
        self.assertEqual(a ** -1, b)
        self.assertEqual(int(a.inverse()), 5)

    def test_element_order(self):
        self.assertEqual(element_order(self.F(3)), 6)
        self.assertEqual(element_order(self.F(2)), 3)
        self.assertEqual(element_order(self.F(6)), 2)
        self.assertEqual(element_order(self.F(1)), 1)

    def test_zero_has_no_order(self):
        with self.assertRaises(UsageError):
            element_order(self.F(0))

    def test_division_by_zero(self):
        with self.assertRaises(ZeroDivisionError):
            self.F(3) / 0


class TestQuadExt(unittest.TestCase):
    def test_nonresidue_is_least(self):
        self.assertEqual(QuadExt(7).d, 3)
        self.assertEqual(QuadExt(5).d, 2)
        self.assertEqual(QuadExt(11).d, 2)

    def test_sqrt_of_nonresidue(self):
        ext = QuadExt(7)
        for a in range(1, 7):
            r = ext.sqrt_of(a)
            self.assertEqual(r * r, a)

    def test_conjugate_and_norm(self):
        ext = QuadExt(7)
        x = ext.element(2, 5)
        self.assertEqual(x * x.conjugate(), x.norm())
        self.assertEqual(x * x.inverse(), 1)
        self.assertEqual(x / x, ext.one)

    def test_omega_for_trace(self):
        for p in (5, 7, 11, 13):
            ext = QuadExt(p)
            for t in range(p):
                omega = ext.omega_for_trace(t)
                self.assertEqual(omega + omega.inverse(), t)

    def test_order_divides_p_squared_minus_one(self):
        ext = QuadExt(11)
        x = ext.element(3, 1)
        k = element_order(x)
        self.assertEqual((11 * 11 - 1) % k, 0)
        self.assertEqual(x ** k, 1)


class TestNumberTheory(unittest.TestCase):
    def test_legendre(self):
        self.assertEqual(legendre(2, 7), 1)
        self.assertEqual(legendre(3, 7), -1)
        self.assertEqual(legendre(14, 7), 0)

    def test_sqrt_mod(self):
        self.assertIn(sqrt_mod(2, 7), (3, 4))
        self.assertIsNone(sqrt_mod(3, 7))
        self.assertEqual(sqrt_mod(0, 7), 0)

    def test_least_nonresidue(self):
        self.assertEqual(least_nonresidue(7), 3)
        self.assertEqual(least_nonresidue(17), 3)
        with self.assertRaises(UsageError):
            least_nonresidue(2)

    def test_check_prime(self):
        self.assertEqual(check_prime(13), 13)
        with self.assertRaises(UsageError):
            check_prime(9)
        with self.assertRaises(UsageError):
            check_prime(2, odd=True)
        with self.assertRaises(UsageError):
            check_prime(1)

    def test_n_of_trace(self):
        self.assertEqual(n_of_trace(2, 7), 7)
        self.assertEqual(n_of_trace(-2, 7), 14)
        self.assertEqual(n_of_trace(0, 7), 4)
        self.assertEqual(n_of_trace(1, 7), 6)
        self.assertEqual(n_of_trace(-1, 7), 3)
        self.assertEqual(n_of_trace(0, 5), 4)

    def test_phi_capital(self):
        self.assertEqual(phi_capital(1), 1)
        self.assertEqual(phi_capital(4), 2)
        self.assertEqual(phi_capital(6), Fraction(5, 2))
        self.assertEqual(phi_capital(12), Fraction(10, 3))

    def test_valuation_and_ceil(self):
        self.assertEqual(l_valuation(3, 18), 2)
        self.assertEqual(l_valuation(5, 18), 0)
        self.assertEqual(ceil_div(7, 2), 4)
        self.assertEqual(ceil_div(-7, 2), -3)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23])
def test_n_of_trace_divides_group_exponent(p):
    for t in range(p):
        n = n_of_trace(t, p)
        if t in (2, p - 2):
            continue
        assert (p - 1) % n == 0 or (p + 1) % n == 0
