#!/usr/bin/env python3
"""
Test Suite for Command Line Module
Tests exit codes, lemma listing and report output formats
"""

import unittest
import sys
import os
import io
import json
import logging
import tempfile
from unittest import mock

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

try:
    from backend.cli import EXIT_PASS, EXIT_USAGE, main
    from backend.config import get_config, set_config
    from backend.verify import LEMMAS
    HAS_CLI = True
except ImportError:
    HAS_CLI = False


@unittest.skipUnless(HAS_CLI, "Command line module not available")
class TestCommandLine(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.config_file = os.path.join(self.tmp.name, "config.json")
        with open(self.config_file, 'w') as f:
            json.dump({
                "LOG_FILE": os.path.join(self.tmp.name, "logs", "verify.log"),
                "LOG_LEVEL": "ERROR",
                "ROOT_SYSTEM_SCAN_BOUND": 10,
                "SHOW_PROGRESS": False,
            }, f)
        self.saved_config = get_config()
        root = logging.getLogger()
        self.saved_handlers = root.handlers[:]
        self.saved_level = root.level

    def tearDown(self):
        root = logging.getLogger()
        for handler in root.handlers[:]:
            handler.close()
            root.removeHandler(handler)
        for handler in self.saved_handlers:
            root.addHandler(handler)
        root.setLevel(self.saved_level)
        set_config(self.saved_config)
        self.tmp.cleanup()

    def run_cli(self, *args):
        out, err = io.StringIO(), io.StringIO()
        code = main(["--config", self.config_file] + list(args), out=out, err=err)
        return code, out.getvalue(), err.getvalue()

    def test_list(self):
        code, out, _ = self.run_cli("list")
        self.assertEqual(code, EXIT_PASS)
        self.assertEqual(out.split(), list(LEMMAS))

    def test_text_report(self):
        code, out, _ = self.run_cli("verify", "heis7-table", "dim-scan")
        self.assertEqual(code, EXIT_PASS)
        lines = out.splitlines()
        self.assertTrue(lines[0].startswith("heis7-table [] PASS"))
        self.assertTrue(lines[1].startswith("dim-scan [bound=10] PASS"))

    def test_json_is_deterministic(self):
        first = self.run_cli("verify", "dim-scan", "root-embeddings", "--format", "json", "--seed", "3")
        second = self.run_cli("verify", "dim-scan", "root-embeddings", "--format", "json", "--seed", "3")
        self.assertEqual(first[0], EXIT_PASS)
        self.assertEqual(first[1], second[1])
        document = json.loads(first[1])
        self.assertEqual(document["seed"], 3)
        self.assertEqual([r["lemma_id"] for r in document["reports"]], ["root-embeddings", "dim-scan"])

    def test_timings_flag(self):
        code, out, _ = self.run_cli("verify", "heis7-table", "--format", "json", "--timings")
        self.assertEqual(code, EXIT_PASS)
        self.assertIn("timing", json.loads(out)["reports"][0])

    def test_unknown_lemma(self):
        code, out, err = self.run_cli("verify", "no-such-lemma")
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(out, "")
        self.assertIn("no-such-lemma", err)

    def test_bad_sizes(self):
        self.assertEqual(self.run_cli("verify", "dim-scan", "--max-n", "2")[0], EXIT_USAGE)
        self.assertEqual(self.run_cli("verify", "dim-scan", "--jobs", "0")[0], EXIT_USAGE)

    def test_usage_errors(self):
        self.assertEqual(self.run_cli()[0], EXIT_USAGE)
        with mock.patch("sys.stderr", io.StringIO()):
            self.assertEqual(main(["verify", "--format", "xml"]), EXIT_USAGE)

if __name__ == '__main__':
    unittest.main()
