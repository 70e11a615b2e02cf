# (c) Copyright The markoff toolkit authors 2026

import os
import tempfile
import unittest

import numpy as np
import pytest

from markoff.errors import GroupBuildError, InvariantViolation, UsageError
from markoff.groups import (Mat, build, corpus, cycles_to_images, dihedral, dihedral_pair, load_group_spec,
                            parse_cycles, sl2, trivial_group)


class TestSL2(unittest.TestCase):
    def setUp(self):
        self.G = sl2(5)

    def tearDown(self):
        self.G = None

    def test_order_and_center(self):
        self.assertEqual(self.G.n, 120)
        self.assertEqual(len(self.G.center), 2)
        self.assertEqual(self.G.num_classes(), 9)
        self.assertFalse(self.G.is_abelian())

    def test_identity_and_inverses(self):
        e = self.G.identity
        self.assertEqual(self.G.label(e), (1, 0, 0, 1))
        for g in range(self.G.n):
            self.assertEqual(int(self.G.mul(g, self.G.inv[g])), e)

    def test_matrix_arithmetic(self):
        u = self.G.index_of(Mat(5, 1, 1, 0, 1))
        self.assertEqual(self.G.order(u), 5)
        self.assertEqual(self.G.label(self.G.power(u, 3)), (1, 3, 0, 1))
        self.assertEqual(self.G.power(u, -1), int(self.G.inv[u]))
        self.assertEqual(self.G.format(u), "[[1, 1], [0, 1]]")

    def test_trace_minus_two_centralizer(self):
        g = self.G.index_of((0, 4, 1, 3))
        self.assertEqual(int(self.G.trace(g)[0]), 3)
        self.assertEqual(self.G.order(g), 10)
        self.assertEqual(len(self.G.centralizer(g)), 10)

    def test_classes(self):
        classes = self.G.classes()
        self.assertEqual(sum(len(c) for c in classes), 120)
        firsts = [int(c[0]) for c in classes]
        self.assertEqual(firsts, sorted(firsts))
        self.assertEqual(self.G.class_of(self.G.identity), 0)
        self.assertEqual(len(self.G.conj_class(self.G.identity)), 1)

    def test_normal_subgroups(self):
        orders = [len(N) for N in self.G.normal_subgroups()]
        self.assertEqual(orders, [1, 2, 120])

    def test_commutator(self):
        g, h = self.G.generators
        c = self.G.commutator(g, h)
        expected = self.G.mul(self.G.mul(self.G.mul(g, h), self.G.inv[g]), self.G.inv[h])
        self.assertEqual(int(c), int(expected))
        self.assertEqual(int(self.G.conjugate(g, h)), int(self.G.mul(self.G.mul(g, h), self.G.inv[g])))

    def test_generating_pair(self):
        g, h = self.G.generators
        self.assertTrue(self.G.is_generating_pair(g, h))
        self.assertFalse(self.G.is_generating_pair(g, g))

    def test_not_an_element(self):
        with self.assertRaises(UsageError):
            self.G.index_of((2, 0, 0, 1))


class TestPermutationGroups(unittest.TestCase):
    def test_a5(self):
        G = load_group_spec('A5')
        self.assertEqual(G.name, 'A5')
        self.assertEqual(G.n, 60)
        self.assertEqual(G.num_classes(), 5)
        self.assertEqual(len(G.center), 1)
        self.assertEqual([len(N) for N in G.normal_subgroups()], [1, 60])
        self.assertEqual(sorted(set(G.orders.tolist())), [1, 2, 3, 5])

    def test_format_cycles(self):
        G = load_group_spec('A5')
        self.assertEqual(G.format(G.generators[0]), "(1 2 3 4 5)")
        self.assertEqual(G.format(G.generators[1]), "(1 2 3)")
        self.assertEqual(G.format(G.identity), "()")

    def test_dihedral(self):
        D = dihedral(5)
        self.assertEqual(D.n, 10)
        self.assertEqual(D.num_classes(), 4)
        u, h = dihedral_pair(D, 5)
        self.assertEqual(D.order(u), 5)
        self.assertEqual(D.order(h), 2)
        with self.assertRaises(UsageError):
            dihedral(2)

    def test_trivial(self):
        G = trivial_group()
        self.assertEqual(G.n, 1)
        self.assertTrue(G.is_abelian())

    def test_label_mode_matches_table(self):
        from markoff.configurator import config
        saved = config['groups']['dense_limit']
        config['groups']['dense_limit'] = 10
        try:
            G = build([(1, 2, 3, 4, 0), (1, 2, 0, 3, 4)], name="A5")
        finally:
            config['groups']['dense_limit'] = saved
        H = load_group_spec('A5')
        self.assertIsNone(G.table)
        self.assertTrue(np.array_equal(G.orders, H.orders))
        self.assertTrue(np.array_equal(G.class_ids, H.class_ids))
        a, b = np.arange(60), np.arange(60)[::-1]
        self.assertTrue(np.array_equal(G.mul(a, b), H.mul(a, b)))

    def test_cycles(self):
        cycles = parse_cycles("(1 2 3)(4 5)")
        self.assertEqual(cycles, [[0, 1, 2], [3, 4]])
        self.assertEqual(cycles_to_images(cycles, 6), (1, 2, 0, 4, 3, 5))
        with self.assertRaises(GroupBuildError):
            parse_cycles("(0 1)")


class TestBuild(unittest.TestCase):
    def test_closure_cap(self):
        with self.assertRaises(GroupBuildError):
            build([(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)], cap=50)

    def test_singular_matrix(self):
        with self.assertRaises(GroupBuildError):
            build([Mat(5, 1, 1, 1, 1)])

    def test_mixed_generators(self):
        with self.assertRaises(GroupBuildError):
            build([Mat(5, 1, 1, 0, 1), (1, 0)])

    def test_not_a_permutation(self):
        with self.assertRaises(GroupBuildError):
            build([(0, 0, 1)])

    def test_spec_files(self):
        spec = tempfile.NamedTemporaryFile('w', suffix='.grp', delete=False)
        try:
            spec.write("# S3\nname: S3\nperm: (1 2)\nperm: (1 2 3)\n")
            spec.close()
            G = load_group_spec(spec.name)
            self.assertEqual(G.name, 'S3')
            self.assertEqual(G.n, 6)
        finally:
            os.unlink(spec.name)

    def test_bad_spec_file(self):
        spec = tempfile.NamedTemporaryFile('w', suffix='.grp', delete=False)
        try:
            spec.write("gens: (1 2)\n")
            spec.close()
            with self.assertRaises(GroupBuildError):
                load_group_spec(spec.name)
        finally:
            os.unlink(spec.name)

    def test_missing_spec(self):
        with self.assertRaises(UsageError):
            load_group_spec('no-such-group')


CORPUS_ORDERS = {'A5': 60, 'A6': 360, 'D10': 10, 'D14': 14, 'D18': 18, 'PSL2_7': 168, 'PSL2_8': 504,
                 'PSL2_11': 660, 'PSL2_13': 1092, 'SL2_5': 120, 'SL2_7': 336}


@pytest.mark.parametrize("path", corpus())
def test_corpus_orders(path):
    name = os.path.splitext(os.path.basename(path))[0]
    assert load_group_spec(path).n == CORPUS_ORDERS[name]


def test_broken_table_is_reported():
    G = sl2(5)
    assert G.table is not None
    saved = G.table
    broken = saved.copy()
    broken[G.identity, 0] = broken[G.identity, 1]
    G.table = broken
    try:
        with pytest.raises(InvariantViolation):
            G._check_axioms()
    finally:
        G.table = saved
