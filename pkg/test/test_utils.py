#!/usr/bin/env python3
"""
Test Suite for Utils Module
Tests utility functions and helpers
"""

import unittest
import sys
import os
import random
import logging
import tempfile
from fractions import Fraction

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

try:
    from backend.utils import (
        report_digest,
        format_duration,
        format_fraction,
        random_fraction,
        progress,
        setup_logging
    )
    from backend.config import Config
    HAS_UTILS = True
except ImportError:
    HAS_UTILS = False

@unittest.skipUnless(HAS_UTILS, "Utils module not available")
class TestUtils(unittest.TestCase):
    
    def test_format_duration(self):
        self.assertEqual(format_duration(0.25), "250ms")
        self.assertEqual(format_duration(1.5), "1.50s")
        self.assertEqual(format_duration(125), "2m 5s")
    
    def test_format_fraction(self):
        self.assertEqual(format_fraction(Fraction(4, 2)), "2")
        self.assertEqual(format_fraction(Fraction(-3, 6)), "-1/2")
        self.assertEqual(format_fraction(0), "0")
    
    def test_report_digest(self):
        a = {"b": [1, 2], "a": "x"}
        b = {"a": "x", "b": [1, 2]}
        self.assertEqual(report_digest(a), report_digest(b))
        self.assertEqual(len(report_digest(a)), 64)  # SHA256 hex digest
        self.assertNotEqual(report_digest(a), report_digest({"a": "y", "b": [1, 2]}))
        # integer and string keys side by side
        self.assertEqual(report_digest({1: "x", "a": 2}), report_digest({"a": 2, "1": "x"}))
    
    def test_random_fraction(self):
        rng1, rng2 = random.Random(3), random.Random(3)
        values = [random_fraction(rng1, 4) for _ in range(50)]
        self.assertEqual(values, [random_fraction(rng2, 4) for _ in range(50)])
        for v in values:
            self.assertLessEqual(abs(v.numerator), 4)
        rng = random.Random(0)
        self.assertTrue(all(random_fraction(rng, 1, nonzero=True) for _ in range(20)))
    
    def test_progress_disabled(self):
        config = Config()
        config.SHOW_PROGRESS = False
        items = [1, 2, 3]
        self.assertIs(progress(items, "items", config=config), items)
    
    def test_setup_logging(self):
        config = Config()
        with tempfile.TemporaryDirectory() as tmp:
            config.LOG_FILE = os.path.join(tmp, "logs", "verify.log")
            root = logging.getLogger()
            saved = root.handlers[:]
            try:
                setup_logging(config, console=False)
                self.assertTrue(os.path.exists(config.LOG_FILE))
                self.assertEqual(len(root.handlers), 1)
            finally:
                for handler in root.handlers[:]:
                    handler.close()
                    root.removeHandler(handler)
                for handler in saved:
                    root.addHandler(handler)

if __name__ == '__main__':
    unittest.main()
