import os
import sys
import tempfile
import unittest
from pathlib import Path
from unittest import mock

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from config.settings import validate_config
from exceptions import DepthNotStabilizedError, JobSpecError, VerificationError
from utils.env_loader import load_environment_variables, thread_count
from utils.error_handler import EXIT_FAILURE, EXIT_USAGE, ErrorHandler
from utils.performance import parallel_map
from utils.report_writer import ReportWriter


class ValidateConfigTestCase(unittest.TestCase):
    def test_int_bounds(self):
        self.assertEqual(validate_config("WEYL_THREADS", 100), 32)
        self.assertEqual(validate_config("WEYL_THREADS", "0"), 1)
        self.assertEqual(validate_config("MAX_DEPTH", "4"), 4)

    def test_fallback_to_default(self):
        self.assertEqual(validate_config("WEYL_THREADS", "many"), 1)
        self.assertEqual(validate_config("OUTPUT_FORMAT", "xml"), "json")

    def test_unknown_names_pass_through(self):
        self.assertEqual(validate_config("SOMETHING_ELSE", "x"), "x")


class EnvironmentTestCase(unittest.TestCase):
    def test_environment_overrides(self):
        env = {"WEYL_MAX_DEPTH": "50", "WEYL_THREADS": "4", "WEYL_LOG_LEVEL": "debug"}
        with tempfile.TemporaryDirectory() as tmp, mock.patch("os.getcwd", return_value=tmp):
            with mock.patch.dict(os.environ, env):
                settings = load_environment_variables()
                self.assertEqual(thread_count(), 4)
        self.assertEqual(settings["MAX_DEPTH"], 12)
        self.assertEqual(settings["WEYL_THREADS"], 4)
        self.assertEqual(settings["LOG_LEVEL"], "DEBUG")

    def test_parallel_map_keeps_order(self):
        with mock.patch.dict(os.environ, {"WEYL_THREADS": "3"}):
            self.assertEqual(parallel_map(lambda x: x * x, range(10)), [x * x for x in range(10)])


class ErrorHandlerTestCase(unittest.TestCase):
    def test_exit_codes(self):
        self.assertEqual(ErrorHandler.exit_code(JobSpecError("bad flag")), EXIT_USAGE)
        self.assertEqual(ErrorHandler.exit_code(VerificationError("no")), EXIT_FAILURE)

    def test_depth_message(self):
        error = DepthNotStabilizedError("W did not stabilize", [3, 4, 5])
        self.assertEqual(ErrorHandler.format_error(error), "Depth did not stabilize (dimensions by depth: 3, 4, 5)")
        shown = []
        self.assertEqual(ErrorHandler.handle_exception(error, shown.append), EXIT_FAILURE)
        self.assertEqual(len(shown), 1)


class ReportWriterTestCase(unittest.TestCase):
    def test_creates_parent_directories(self):
        with tempfile.TemporaryDirectory() as tmp:
            target = Path(tmp) / "nested" / "report.csv"
            written = ReportWriter().write("a,b\n1,2\n", str(target))
            self.assertEqual(written, target)
            self.assertEqual(target.read_bytes(), b"a,b\n1,2\n")


if __name__ == "__main__":
    unittest.main()
