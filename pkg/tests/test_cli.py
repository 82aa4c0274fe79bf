import argparse
import contextlib
import io
import json
import os
import sys
import tempfile
import unittest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from cli.commands import run_job
from cli.formatters import render
from cli.job_spec import JobSpec, parse_chi, parse_int_list
from exceptions import JobSpecError
from main import run
from utils.error_handler import EXIT_FAILURE, EXIT_OK, EXIT_USAGE


class RunTestCase(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def run_cli(self, *argv, name="out.json"):
        path = os.path.join(self.tmp.name, name)
        with contextlib.redirect_stderr(io.StringIO()):
            code = run(list(argv) + ["--out", path])
        text = ""
        if os.path.exists(path):
            with open(path, encoding="utf-8") as f:
                text = f.read()
        return code, text

    def test_fold_a2(self):
        code, text = self.run_cli("fold", "A", "2", "--perm", "2,1")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(text)
        self.assertTrue(data["passed"])
        self.assertEqual(data["result"]["graded_dimensions"], [3, 5])
        self.assertTrue(data["result"]["cartan_methods_agree"])

    def test_json_is_deterministic(self):
        _, first = self.run_cli("fold", "D", "4", "--perm", "3,2,4,1", name="a.json")
        _, second = self.run_cli("fold", "D", "4", "--perm", "3,2,4,1", name="b.json")
        self.assertTrue(first)
        self.assertEqual(first, second)

    def test_output_path_not_in_report(self):
        _, text = self.run_cli("fold", "A", "2", "--perm", "2,1", name="nested/fold.json")
        self.assertNotIn("out", json.loads(text)["job"])
        self.assertNotIn("fold.json", text)

    def test_empty_chi_gives_trivial_module(self):
        code, text = self.run_cli("weyl", "--type", "A", "--rank", "2", "--chi", "{}")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(text)["result"]["dimension"], 1)

    def test_folded_weight_picks_an_automorphism(self):
        code, text = self.run_cli("weyl", "--type", "A", "--rank", "2", "--lambda", "1")
        self.assertEqual(code, EXIT_OK)
        result = json.loads(text)["result"]
        self.assertEqual(result["dimension"], 3)
        self.assertTrue(result["twisted_cyclic"])

    def test_verify_jacobi_text(self):
        code, text = self.run_cli("verify", "jacobi", "--type", "G", "--rank", "2", "--format", "text", name="g2.txt")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("PASS", text)
        self.assertIn("truncated_jacobi", text)

    def test_csv_tables(self):
        code, text = self.run_cli("fold", "A", "3", "--perm", "3,2,1", "--format", "csv", name="a3.csv")
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(text.startswith("# graded_pieces\ngrade,dimension\n0,10\n1,5\n"))

    def test_usage_errors(self):
        self.assertEqual(self.run_cli("xi", "--rank", "2", "--perm", "2,1", "--chi", "{bad")[0], EXIT_USAGE)
        self.assertEqual(self.run_cli("fold", "Q", "2")[0], EXIT_USAGE)
        self.assertEqual(self.run_cli("weyl", "--no-such-flag")[0], EXIT_USAGE)
        self.assertEqual(self.run_cli("verify", "everything")[0], EXIT_USAGE)

    def test_missing_command(self):
        with contextlib.redirect_stderr(io.StringIO()):
            self.assertEqual(run([]), EXIT_USAGE)

    def test_invalid_automorphism_fails(self):
        code, text = self.run_cli("fold", "A", "3", "--perm", "2,1,3")
        self.assertEqual(code, EXIT_FAILURE)
        self.assertEqual(text, "")


class JobSpecTestCase(unittest.TestCase):
    def namespace(self, **kwargs):
        values = {"command": "weyl", "type": "b", "rank": 2}
        values.update(kwargs)
        return argparse.Namespace(**values)

    def test_defaults_and_normalization(self):
        spec = JobSpec.from_namespace(self.namespace(perm="1,2"))
        self.assertEqual(spec.type_label, "B")
        self.assertEqual(spec.perm0, [0, 1])
        self.assertEqual(spec.output_format, "json")
        self.assertEqual(spec.max_depth, 6)

    def test_samples_are_clamped(self):
        self.assertEqual(JobSpec.from_namespace(self.namespace(samples=50)).samples, 20)

    def test_invalid_values(self):
        with self.assertRaises(JobSpecError):
            JobSpec.from_namespace(self.namespace(depth=0))
        with self.assertRaises(JobSpecError):
            parse_int_list("1,x", "perm")
        with self.assertRaises(JobSpecError):
            parse_chi("[1, 2]")
        self.assertEqual(parse_chi('{"1/2": [1]}'), {"1/2": [1]})

    def test_report_rendering(self):
        spec = JobSpec(command="xi", type_label="A", rank=2, perm=[2, 1], chi={"1": [1, 0]}, output_format="csv")
        report = run_job(spec)
        self.assertFalse(report.result["equivariant"])
        self.assertEqual(report.result["symmetrized"], {"-1": [0, 1], "1": [1, 0]})
        self.assertTrue(render(report).startswith("# summary\nkey,value\n"))

    def test_verify_jacobi_twisted_checks(self):
        spec = JobSpec(command="verify", suite="jacobi", type_label="A", rank=2, perm=[2, 1])
        report = run_job(spec)
        self.assertTrue(report.passed, report.witnesses)
        for name in ("twisted_sl2_triples", "evaluation_at_one", "pbw_confluence"):
            self.assertTrue(report.checks[name], name)

    def test_fold_reports_averaging_grades(self):
        report = run_job(JobSpec(command="fold", type_label="D", rank=4, perm=[3, 2, 4, 1]))
        orbit = next(row for row in report.result["averaging"] if row["grades"][1] is not None)
        self.assertEqual(orbit["grades"], [0, 1, 2])
        self.assertEqual(orbit["positive_exponent_grades"], [0, 2, 1])


if __name__ == "__main__":
    unittest.main()
