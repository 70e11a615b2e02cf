# (c) Copyright The markoff toolkit authors 2026

import csv
import io
import json
import os
import unittest
from unittest import mock

import pytest

from markoff.cli import Report, build_parser, render
from markoff.errors import InvariantViolation, UsageError

from .helpers import TempCacheDir, clear_markoff_env, restore_markoff_env, run_cli


class TestCommands(unittest.TestCase):
    def setUp(self):
        self.saved_env = clear_markoff_env()

    def tearDown(self):
        restore_markoff_env(self.saved_env)

    def test_orbits(self):
        status, text = run_cli("orbits", "--p", 5, "--t", -2)
        self.assertEqual(status, 0)
        payload = json.loads(text)
        self.assertTrue(payload['transitive'])
        self.assertEqual(payload['orbits'][0]['size'], 40)
        self.assertEqual(payload['gens'], 'gamma')

    def test_orbits_by_bfs_agree(self):
        _, by_labels = run_cli("orbits", "--p", 11, "--t", 0, "--gens", "full")
        _, by_bfs = run_cli("orbits", "--p", 11, "--t", 0, "--gens", "full", "--method", "bfs")
        self.assertEqual(json.loads(by_labels)['orbits'], json.loads(by_bfs)['orbits'])

    def test_congruence_csv(self):
        status, text = run_cli("--format", "csv", "congruence", "--p", 7, "--all-t")
        self.assertEqual(status, 0)
        rows = list(csv.DictReader(io.StringIO(text)))
        self.assertTrue(rows)
        self.assertTrue(all(row['pass'] == 'pass' for row in rows))
        self.assertNotIn('2', {row['t'] for row in rows})

    def test_format_after_the_command(self):
        status, text = run_cli("congruence", "--p", 7, "--format", "csv")
        self.assertEqual(status, 0)
        self.assertTrue(text.startswith("p,t,rep,size,rule,modulus,pass"))

    def test_genus(self):
        status, text = run_cli("genus", "--p", 11)
        self.assertEqual(status, 0)
        payload = json.loads(text)
        self.assertEqual(payload['genus_rh'], 1)
        self.assertEqual(payload['genus_closed'], "1")

    def test_cusps(self):
        status, text = run_cli("cusps", "--p", 7)
        self.assertEqual(json.loads(text)['count'], 5)
        status, text = run_cli("cusps", "--group", "D10")
        self.assertEqual(status, 0)
        self.assertTrue(all(c['exact'] for c in json.loads(text)['cusps']))

    def test_tree(self):
        status, text = run_cli("tree", "--bound", 30)
        self.assertEqual(status, 0)
        self.assertEqual(len(json.loads(text)['triples']), 5)

    def test_table_format(self):
        status, text = run_cli("--format", "table", "tree", "--bound", 30)
        self.assertEqual(status, 0)
        lines = text.splitlines()
        self.assertEqual(lines[0].split(), ['x', 'y', 'z'])
        self.assertTrue(set(lines[1]) <= {'-', ' '})
        self.assertEqual(lines[-1].split(), ['2', '5', '29'])

    def test_nielsen(self):
        status, text = run_cli("nielsen", "--group", "SL2_5", "--higman-order", 10)
        self.assertEqual(status, 0)
        payload = json.loads(text)
        self.assertEqual(payload['classes'], 80)
        self.assertEqual({s['modulus'] for s in payload['strata']}, {5})

    def test_strong_approx_and_frobenius(self):
        status, text = run_cli("strong-approx", "--n", 5)
        self.assertEqual(status, 0)
        self.assertTrue(json.loads(text)['holds'])
        status, text = run_cli("frobenius", "--p", 7, "--bound", 1000)
        self.assertEqual(status, 0)
        self.assertEqual(json.loads(text)['forbidden'], [0, 3, 4])

    def test_crosscheck(self):
        status, text = run_cli("crosscheck", "--p", 5)
        self.assertEqual(status, 0)
        self.assertTrue(json.loads(text)['trace_bijection'])

    def test_cache_dir(self):
        with TempCacheDir() as directory:
            self.assertEqual(run_cli("--cache", directory, "orbits", "--p", 7)[0], 0)
            self.assertIn("points-7-5.mkxt", os.listdir(directory))
            self.assertEqual(run_cli("--cache", directory, "orbits", "--p", 7)[0], 0)


class TestExitStatus(unittest.TestCase):
    def test_usage_errors(self):
        self.assertEqual(run_cli("genus", "--p", 9)[0], 1)
        self.assertEqual(run_cli("genus")[0], 1)
        self.assertEqual(run_cli("no-such-command")[0], 1)
        self.assertEqual(run_cli("congruence", "--p", 7, "--t", 2)[0], 1)
        self.assertEqual(run_cli("nielsen", "--group", "no-such-group")[0], 1)

    def test_p_max(self):
        self.assertEqual(run_cli("--p-max", 5, "genus", "--p", 7)[0], 1)
        self.assertEqual(run_cli("genus", "--p-max", 5, "--p", 7)[0], 1)

    def test_invariant_violation(self):
        with mock.patch('markoff.markoff_z.grow_tree', side_effect=InvariantViolation("descent stalls", bound=30)):
            status, text = run_cli("tree", "--bound", 30)
        self.assertEqual(status, 2)
        payload = json.loads(text)
        self.assertEqual(payload['error'], "descent stalls")
        self.assertEqual(payload['payload'], {'bound': 30})


def test_parser_raises_usage_error():
    with pytest.raises(UsageError):
        build_parser().parse_args(["orbits", "--p", "five"])


def test_render_csv_and_table():
    report = Report({}, ('a', 'bb'), [(1, 22), (333, 4)])
    out = io.StringIO()
    render(report, 'csv', out)
    assert out.getvalue() == "a,bb\n1,22\n333,4\n"
    out = io.StringIO()
    render(report, 'table', out)
    assert out.getvalue() == "a    bb\n---  --\n1    22\n333  4\n"
