# (c) Copyright The markoff toolkit authors 2026

import os
import unittest

import pytest

from markoff.cusp_comb import (A_group, cusp_automorphism_order, cusp_crosscheck, cusp_records, cyclic_subgroup,
                               d_prime, delta_classes, k_uh, m_group, m_prime)
from markoff.groups import corpus, dihedral, dihedral_pair, load_group_spec, sl2
from markoff.modular import cusp_count_closed
from markoff.nielsen import higman_classes, higman_invariant, markoff_pair_space, out_plus_orbits


class TestDihedral(unittest.TestCase):
    def setUp(self):
        self.D = dihedral(5)
        self.u, self.h = dihedral_pair(self.D, 5)

    def tearDown(self):
        self.D = None

    def test_rotation_and_reflection(self):
        self.assertEqual(k_uh(self.D, self.u, self.h), 1)
        self.assertEqual(len(m_group(self.D, self.u, self.h)), 5)
        self.assertEqual(len(A_group(self.D, self.u, self.h)), 5)

    def test_reflection_first(self):
        # C(h) = {1, h}, so only h^2 = 1 is reachable
        self.assertEqual(k_uh(self.D, self.h, self.u), 2)
        self.assertEqual(len(A_group(self.D, self.h, self.u)), 1)

    def test_cyclic_subgroup(self):
        self.assertEqual(len(cyclic_subgroup(self.D, self.u)), 5)
        self.assertEqual(len(cyclic_subgroup(self.D, self.h)), 2)
        self.assertEqual(len(cyclic_subgroup(self.D, self.D.identity)), 1)

    def test_every_record_is_exact(self):
        records = cusp_records(self.D)
        self.assertTrue(records)
        for record in records:
            self.assertTrue(record.exact)
            self.assertEqual(record.k, record.width)
            self.assertEqual(record.center_order, 1)


class TestSL2(unittest.TestCase):
    def setUp(self):
        self.G = sl2(5)
        self.c = higman_classes(self.G, trace=-2)[0]

    def test_primes(self):
        self.assertEqual(d_prime(self.G, self.c), 1)
        self.assertEqual(m_prime(self.G, self.c), 2)

    def test_widths_cover_the_classes(self):
        deltas = delta_classes(self.G, [self.c])
        self.assertEqual(sum(d.width for d in deltas), 40)
        self.assertTrue(all(d.higman == self.c for d in deltas))
        self.assertEqual(deltas[0].to_dict()['higman'], self.c)

    def test_vertical_orders(self):
        for record in cusp_records(self.G, [self.c]):
            self.assertEqual(cusp_automorphism_order(record), record.vertical)
            self.assertEqual(record.center_order, 2)
            self.assertIn(record.vertical, (1, 2))

    def test_gl2_classes_give_the_cusps(self):
        space = markoff_pair_space(5)
        self.assertEqual(len(delta_classes(space.group, space=space)), cusp_count_closed(5))


@pytest.mark.parametrize("p", [5, 7])
def test_cusp_crosscheck(p):
    assert cusp_crosscheck(p)


@pytest.mark.parametrize("p", [11, 13])
def test_cusp_crosscheck_larger_primes(p):
    assert cusp_crosscheck(p)


@pytest.mark.parametrize("p", [5, 7, 11])
def test_sl2_twists_reach_the_whole_rotation(p):
    G = sl2(p)
    for record in cusp_records(G, higman_classes(G, trace=-2)):
        assert record.k == record.u_order
        assert record.a_order == 2


@pytest.mark.parametrize("path", corpus(), ids=os.path.basename)
def test_corpus_cusps_are_exact(path):
    records = cusp_records(load_group_spec(path))
    assert records
    assert all(record.exact for record in records)


@pytest.mark.parametrize("k", [5, 7, 9])
def test_dihedral_modulus_degenerates(k):
    D = dihedral(k)
    u, h = dihedral_pair(D, k)
    assert len(A_group(D, u, h)) == k
    c = int(higman_invariant(D, u, h))
    stratum = out_plus_orbits(D, [c]).stratum(c)
    assert stratum.modulus == 1


@pytest.mark.parametrize("k", range(5, 26))
def test_dihedral_cusps_are_exact(k):
    records = cusp_records(dihedral(k))
    assert records
    assert all(record.exact and record.k == record.width for record in records)


@pytest.mark.parametrize("k", range(5, 26, 2))
def test_dihedral_congruence(k):
    assert out_plus_orbits(dihedral(k)).passed()
