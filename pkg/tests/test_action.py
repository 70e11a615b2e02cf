# (c) Copyright The markoff toolkit authors 2026

import unittest

import numpy as np
import pytest
from sympy import primerange

from markoff.action import (MoveWord, apply, cycle_lengths, cycle_type, generator_set, orbit_decompose, orbit_labels,
                            orbit_labels_bfs, parity, permutation_of, rot_orbits_on_fiber, sign_changes)
from markoff.arith import n_of_trace
from markoff.errors import UsageError
from markoff.surface import SurfacePoint, enumerate_points, star_count_closed, t_values


class TestMoves(unittest.TestCase):
    def setUp(self):
        self.table = enumerate_points(7, -2)
        self.n = self.table.count('star')

    def tearDown(self):
        self.table = None

    def test_vieta_move(self):
        self.assertEqual(apply('R3', SurfacePoint(3, 3, 3, 5)), SurfacePoint(3, 3, 1, 5))

    def test_words_apply_right_to_left(self):
        P = SurfacePoint(3, 3, 3, 5)
        self.assertEqual(apply('Swap12*R1', P), apply('Swap12', apply('R1', P)))
        self.assertEqual(str(MoveWord('Swap12*R1')), "Swap12*R1")
        self.assertEqual(str(MoveWord()), "1")

    def test_unknown_generator(self):
        with self.assertRaises(UsageError):
            MoveWord('R4')

    def test_involutions(self):
        ident = np.arange(self.n)
        for tag in ('R1', 'R2', 'R3', 'Swap12', 'Swap23', 'Swap13', 'Gamma1728'):
            perm, _ = permutation_of(tag, self.table)
            self.assertTrue(np.array_equal(perm[perm], ident), tag)

    def test_gamma0_has_order_three(self):
        perm, _ = permutation_of('Gamma0', self.table)
        self.assertTrue(np.array_equal(perm[perm[perm]], np.arange(self.n)))

    def test_gamma_inf_is_rot1(self):
        self.assertTrue(np.array_equal(permutation_of('GammaInf', self.table)[0],
                                       permutation_of('Rot1', self.table)[0]))

    def test_named_sets(self):
        name, words = generator_set('gamma')
        self.assertEqual(name, 'gamma')
        self.assertEqual(len(words), 3)
        name, words = generator_set(['R1', 'Rot1'])
        self.assertEqual(name, "R1,Rot1")

    def test_sign_changes(self):
        neg_xy, neg_xz, neg_yz = sign_changes(self.table)
        self.assertTrue(np.array_equal(neg_xy[neg_xz], neg_yz))
        self.assertFalse(np.any(neg_xy == np.arange(self.n)))
        r1, _ = permutation_of('R1', self.table)
        self.assertTrue(np.array_equal(r1[neg_xy], neg_xy[r1]))


class TestPermutations(unittest.TestCase):
    def test_orbit_labels(self):
        perms = [np.array([1, 0, 2, 3]), np.array([0, 1, 3, 2])]
        self.assertEqual(orbit_labels(perms, 4).tolist(), [0, 0, 2, 2])
        self.assertEqual(orbit_labels_bfs(perms, 4).tolist(), [0, 0, 2, 2])

    def test_long_cycle(self):
        perm = np.roll(np.arange(1000), 1)
        self.assertEqual(orbit_labels([perm], 1000).tolist(), [0] * 1000)

    def test_cycle_lengths_and_parity(self):
        perm = np.array([1, 2, 0, 3, 5, 4])
        self.assertEqual(cycle_lengths(perm).tolist(), [3, 1, 2])
        self.assertEqual(cycle_type(perm), [1, 2, 3])
        self.assertEqual(parity(perm), 1)
        self.assertEqual(parity(np.array([1, 2, 0])), 0)
        self.assertEqual(parity(np.array([], dtype=np.int64)), 0)


class TestOrbits(unittest.TestCase):
    def test_transitive_at_minus_two(self):
        for p in (5, 7, 11, 13):
            decomposition = orbit_decompose(enumerate_points(p, -2))
            self.assertTrue(decomposition.is_transitive())
            self.assertEqual(decomposition.sizes.tolist(), [star_count_closed(p)])

    def test_representative_is_least_key(self):
        table = enumerate_points(11, 0)
        decomposition = orbit_decompose(table)
        for i in range(len(decomposition)):
            members = decomposition.members(i)
            self.assertEqual(int(table.keys[members].min()), decomposition.representative_point(i).key())

    def test_orbit_of(self):
        table = enumerate_points(5, -2)
        decomposition = orbit_decompose(table)
        self.assertEqual(decomposition.orbit_of(int(table.index_of(3, 3, 3))), 0)
        self.assertEqual(decomposition.orbit_of(int(table.index_of(0, 0, 0))), -1)

    def test_unknown_method(self):
        with self.assertRaises(UsageError):
            orbit_decompose(enumerate_points(5, 0), method='dfs')

    def test_to_dict(self):
        kvs = orbit_decompose(enumerate_points(5, -2)).to_dict()
        self.assertEqual(kvs['p'], 5)
        self.assertEqual(kvs['gens'], 'gamma')
        self.assertEqual(kvs['points'], 40)
        self.assertEqual(kvs['orbits'][0]['size'], 40)


@pytest.mark.parametrize("p,t", [(7, 0), (11, 3), (13, 5), (13, 11)])
def test_labels_and_bfs_agree(p, t):
    table = enumerate_points(p, t)
    for gens in ('gamma', 'full', 'out_plus'):
        by_labels = orbit_decompose(table, gens, method='labels')
        by_bfs = orbit_decompose(table, gens, method='bfs')
        assert by_labels.pairs() == by_bfs.pairs()


@pytest.mark.parametrize("p", [7, 11, 13])
def test_rot1_orbits_on_fibers(p):
    for a in range(p):
        sizes = rot_orbits_on_fiber(p, -2, a)
        assert all(s == n_of_trace(a, p) for s in sizes)


@pytest.mark.parametrize("p", list(primerange(5, 301)))
def test_transitive_up_to_300(p):
    decomposition = orbit_decompose(enumerate_points(p, -2))
    assert decomposition.sizes.tolist() == [star_count_closed(p)]
    assert star_count_closed(p) == (p * (p + 3) if p % 4 == 1 else p * (p - 3))


@pytest.mark.parametrize("p", list(primerange(3, 101)))
def test_rot1_is_free_on_every_fiber(p):
    for t in t_values(p):
        for a in range(p):
            sizes = rot_orbits_on_fiber(p, t, a)
            assert all(s == n_of_trace(a, p) for s in sizes), (p, t, a, sizes)
