#!/usr/bin/env python3
"""
Test Suite for Verification Module
Tests lemma selection, report invariants, the report stream and its schema
"""

import unittest
import sys
import os
import json
from unittest import mock

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

try:
    from backend.verify import (
        FAIL,
        LEMMAS,
        PASS,
        VerificationReport,
        report_document,
        run_verify,
        select_lemmas,
    )
    from backend.config import Config
    from backend.utils import report_digest
    from backend.errors import ContractViolation, DomainError
    HAS_VERIFY = True
except ImportError:
    HAS_VERIFY = False

try:
    import jsonschema
    HAS_JSONSCHEMA = True
except ImportError:
    HAS_JSONSCHEMA = False

SCHEMA_FILE = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                           "backend", "report_schema.json")


def small_config():
    config = Config()
    config.DEFAULT_SEED = 1
    config.FALSIFIER_TRIALS = 2
    config.FALSIFIER_SIZES = [3, 5]
    config.ENGEL_TRIALS = 2
    config.ENGEL_SIZES = [4]
    config.SL2_MAX_K = 4
    config.ROOT_SYSTEM_SCAN_BOUND = 10
    config.SHOW_PROGRESS = False
    return config


@unittest.skipUnless(HAS_VERIFY, "Verification module not available")
class TestSelection(unittest.TestCase):

    def test_all(self):
        self.assertEqual(select_lemmas(["all"]), list(LEMMAS))
        self.assertEqual(select_lemmas([]), list(LEMMAS))
        self.assertEqual(len(LEMMAS), 12)

    def test_registry_order(self):
        self.assertEqual(select_lemmas(["dim-scan", "heis7-table"]), ["heis7-table", "dim-scan"])

    def test_unknown_id(self):
        with self.assertRaises(DomainError):
            select_lemmas(["heis7-table", "no-such-lemma"])


@unittest.skipUnless(HAS_VERIFY, "Verification module not available")
class TestVerificationReport(unittest.TestCase):

    def test_fail_needs_counterexample(self):
        with self.assertRaises(ContractViolation):
            VerificationReport("dim-scan", {}, FAIL)

    def test_pass_has_no_counterexample(self):
        with self.assertRaises(ContractViolation):
            VerificationReport("dim-scan", {}, PASS, counterexamples=["x"])

    def test_unknown_status(self):
        with self.assertRaises(ContractViolation):
            VerificationReport("dim-scan", {}, "maybe")

    def test_timing_is_optional_in_output(self):
        report = VerificationReport("dim-scan", {"bound": 10}, PASS, timing=0.5)
        self.assertNotIn("timing", report.to_dict())
        self.assertEqual(report.to_dict(include_timing=True)["timing"], 0.5)
        self.assertEqual(report.to_text(), "dim-scan [bound=10] PASS (500ms)")


@unittest.skipUnless(HAS_VERIFY, "Verification module not available")
class TestRunVerify(unittest.TestCase):

    def setUp(self):
        self.config = small_config()

    def test_fast_lemmas_pass_in_order(self):
        reports = run_verify(["dim-scan", "heis7-table", "root-embeddings"], max_n=3, config=self.config)
        self.assertEqual([r.lemma_id for r in reports], ["heis7-table", "root-embeddings", "dim-scan"])
        for report in reports:
            self.assertEqual(report.status, PASS, report.to_dict())
            self.assertIsNotNone(report.timing)

    def test_threads_do_not_change_reports(self):
        selection = ["heis7-table", "dim-scan", "umax-semidirect"]
        serial = run_verify(selection, max_n=3, config=self.config, jobs=1)
        threaded = run_verify(selection, max_n=3, config=self.config, jobs=3)
        self.assertEqual([r.to_dict() for r in serial], [r.to_dict() for r in threaded])

    def test_structural_lemmas(self):
        selection = ["construction-soundness", "root-decompositions", "heis-embeddings", "discompact-profile"]
        for report in run_verify(selection, max_n=3, config=self.config):
            self.assertEqual(report.status, PASS, report.lemma_id)

    def test_obstruction_lemma(self):
        report, = run_verify(["heis7-obstruction"], max_n=3, seed=4, config=self.config)
        self.assertEqual(report.status, PASS)
        self.assertEqual(report.degree_bounds["grid_points"], 81)
        self.assertTrue(report.search_counts["3"]["vacuous"])
        self.assertFalse(report.search_counts["5"]["vacuous"])

    def test_sl2_lemma(self):
        report, = run_verify(["sl2-identity"], max_n=4, config=self.config)
        self.assertEqual(report.status, PASS, report.counterexamples)
        self.assertEqual(report.params["max_k"], 4)

    def test_conformal_and_engel_lemmas(self):
        for report in run_verify(["conformal-quotient", "engel-isotropic"], max_n=3, config=self.config):
            self.assertEqual(report.status, PASS, report.counterexamples)

    def test_library_errors_become_failures(self):
        def broken(ctx):
            raise DomainError("boom")
        with mock.patch.dict(LEMMAS, {"dim-scan": broken}):
            report, = run_verify(["dim-scan"], max_n=3, config=self.config)
        self.assertEqual(report.status, FAIL)
        self.assertIn("boom", report.counterexamples[0])

    def test_max_n_too_small(self):
        with self.assertRaises(DomainError):
            run_verify(["dim-scan"], max_n=2, config=self.config)


@unittest.skipUnless(HAS_VERIFY, "Verification module not available")
class TestReportDocument(unittest.TestCase):

    def setUp(self):
        self.config = small_config()
        with open(SCHEMA_FILE, 'r') as f:
            self.schema = json.load(f)

    def test_document_matches_schema(self):
        reports = run_verify(["heis7-table", "dim-scan"], max_n=3, config=self.config)
        document = json.loads(json.dumps(report_document(reports, 3, 1, self.config)))
        self.assertEqual(set(document), set(self.schema["required"]))
        self.assertEqual(document["status"], PASS)
        self.assertEqual(document["tool"], "LieVerify")

        report_schema = self.schema["definitions"]["report"]
        allowed = set(report_schema["properties"])
        for report in document["reports"]:
            self.assertTrue(set(report_schema["required"]).issubset(report))
            self.assertTrue(set(report).issubset(allowed))
            self.assertIn(report["lemma_id"], report_schema["properties"]["lemma_id"]["enum"])
            self.assertNotIn("timing", report)

    @unittest.skipUnless(HAS_JSONSCHEMA, "jsonschema not available")
    def test_document_validates(self):
        reports = run_verify(["heis7-table", "dim-scan", "root-embeddings"], max_n=3, config=self.config)
        for include_timing in (False, True):
            document = report_document(reports, 3, 1, self.config, include_timing=include_timing)
            jsonschema.validate(json.loads(json.dumps(document)), self.schema)

    @unittest.skipUnless(HAS_JSONSCHEMA, "jsonschema not available")
    def test_schema_rejects_broken_reports(self):
        reports = run_verify(["heis7-table"], max_n=3, config=self.config)
        document = json.loads(json.dumps(report_document(reports, 3, 1, self.config)))

        silent_failure = json.loads(json.dumps(document))
        silent_failure["reports"][0]["status"] = FAIL
        with self.assertRaises(jsonschema.ValidationError):
            jsonschema.validate(silent_failure, self.schema)

        noisy_pass = json.loads(json.dumps(document))
        noisy_pass["reports"][0]["counterexamples"] = ["unexpected"]
        with self.assertRaises(jsonschema.ValidationError):
            jsonschema.validate(noisy_pass, self.schema)

        extra_key = json.loads(json.dumps(document))
        extra_key["reports"][0]["note"] = "x"
        with self.assertRaises(jsonschema.ValidationError):
            jsonschema.validate(extra_key, self.schema)

    def test_digest_ignores_timings(self):
        reports = run_verify(["heis7-table", "dim-scan"], max_n=3, config=self.config)
        plain = report_document(reports, 3, 1, self.config)
        timed = report_document(reports, 3, 1, self.config, include_timing=True)
        self.assertEqual(plain["digest"], timed["digest"])
        self.assertEqual(plain["digest"], report_digest([r.to_dict() for r in reports]))

        again = run_verify(["heis7-table", "dim-scan"], max_n=3, config=self.config)
        self.assertEqual(report_document(again, 3, 1, self.config)["digest"], plain["digest"])

    def test_schema_lists_every_lemma(self):
        ids = self.schema["definitions"]["report"]["properties"]["lemma_id"]["enum"]
        self.assertEqual(ids, list(LEMMAS))

    def test_failing_stream(self):
        failing = VerificationReport("dim-scan", {}, FAIL, counterexamples=["pair (4, 3)"])
        document = report_document([failing], 3, 1, self.config)
        self.assertEqual(document["status"], FAIL)

if __name__ == '__main__':
    unittest.main()
